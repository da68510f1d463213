#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bimon {

/// Base of every error thrown by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Errors caused by malformed input (configs, expressions, sample files).
class input_error : public error {
public:
  using error::error;
};

/// Errors raised while computing (a problem the solver refuses or cannot finish).
class numeric_error : public error {
public:
  using error::error;
};

/// File system failures (unreadable inputs, unwritable outputs).
class IoError : public error {
public:
  using error::error;
};

class NonInvertible : public numeric_error {
public:
  using numeric_error::numeric_error;
};

class PoleInDomain : public numeric_error {
public:
  using numeric_error::numeric_error;
};

class NonFiniteSample : public numeric_error {
public:
  using numeric_error::numeric_error;
};

class EvaluationOutsideDomain : public numeric_error {
public:
  using numeric_error::numeric_error;
};

class EvaluationError : public numeric_error {
public:
  using numeric_error::numeric_error;
};

class NoFiniteLimit : public numeric_error {
public:
  using numeric_error::numeric_error;
};

class TraceUnavailable : public numeric_error {
public:
  using numeric_error::numeric_error;
};

class ParseError : public input_error {
public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
      : input_error(what), offset_(offset), expected_(std::move(expected)) {}

  /// Byte offset into the source text where parsing stopped.
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownIdentifier : public input_error {
public:
  UnknownIdentifier(std::size_t offset, const std::string& what) : input_error(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

class WrongVariable : public input_error {
public:
  WrongVariable(std::size_t offset, const std::string& what) : input_error(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

class ConfigError : public input_error {
public:
  using input_error::input_error;
};

} // namespace bimon
