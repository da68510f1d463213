#pragma once

/**
 * @file expr.hpp
 * @brief Expression language for real boundary data.
 *
 * Grammar (whitespace between tokens is ignored):
 *
 *   expr   := term (('+' | '-') term)*
 *   term   := factor (('*' | '/') factor)*
 *   factor := unary ('^' factor)?            right-associative
 *   unary  := '-'? atom
 *   atom   := number | 'pi' | var | func '(' expr ')' | '(' expr ')'
 *   func   := sin | cos | tan | exp | log | sqrt | abs | atan
 *
 * The variable is `theta` for circle data and `t` for real-line data; using
 * the other one is an error. There are no user-defined names.
 */

#include <bimon/errors.hpp>

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bimon {

enum class Variable { theta, t };

inline std::string_view variable_name(Variable v) { return v == Variable::theta ? "theta" : "t"; }

enum class Func { sin, cos, tan, exp, log, sqrt, abs, atan };

inline constexpr std::array<std::pair<std::string_view, Func>, 8> function_names{{
    {"sin", Func::sin},
    {"cos", Func::cos},
    {"tan", Func::tan},
    {"exp", Func::exp},
    {"log", Func::log},
    {"sqrt", Func::sqrt},
    {"abs", Func::abs},
    {"atan", Func::atan},
}};

inline std::string_view function_name(Func f) {
  for (const auto& [name, fn] : function_names)
    if (fn == f) return name;
  return "?";
}

struct ExprNode {
  enum class Kind { number, pi, variable, negate, add, subtract, multiply, divide, power, call };

  Kind kind = Kind::number;
  double value = 0.0;     // number
  Func func = Func::sin;  // call
  std::vector<ExprNode> args;

  friend bool operator==(const ExprNode&, const ExprNode&) = default;
};

namespace detail {

class ExprParser {
public:
  ExprParser(std::string_view text, Variable var) : text_(text), var_(var) {}

  ExprNode parse() {
    skip_ws();
    if (pos_ == text_.size()) fail({"expression"}, "empty expression");
    ExprNode e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail({"operator", "end of input"}, "unexpected trailing input");
    return e;
  }

private:
  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& msg) const {
    std::string list;
    for (const auto& e : expected) list += (list.empty() ? "" : ", ") + e;
    throw ParseError(pos_, std::move(expected),
                     "parse error at offset " + std::to_string(pos_) + ": " + msg + " (expected " + list + ")");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail({std::string("'") + c + "'"}, std::string("missing '") + c + "'");
  }

  static ExprNode binary(ExprNode::Kind k, ExprNode a, ExprNode b) {
    ExprNode n;
    n.kind = k;
    n.args.push_back(std::move(a));
    n.args.push_back(std::move(b));
    return n;
  }

  ExprNode expr() {
    ExprNode lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = binary(ExprNode::Kind::add, std::move(lhs), term());
      else if (accept('-'))
        lhs = binary(ExprNode::Kind::subtract, std::move(lhs), term());
      else
        return lhs;
    }
  }

  ExprNode term() {
    ExprNode lhs = factor();
    for (;;) {
      if (accept('*'))
        lhs = binary(ExprNode::Kind::multiply, std::move(lhs), factor());
      else if (accept('/'))
        lhs = binary(ExprNode::Kind::divide, std::move(lhs), factor());
      else
        return lhs;
    }
  }

  ExprNode factor() {
    ExprNode base = unary();
    if (accept('^')) return binary(ExprNode::Kind::power, std::move(base), factor());
    return base;
  }

  ExprNode unary() {
    if (accept('-')) {
      ExprNode n;
      n.kind = ExprNode::Kind::negate;
      n.args.push_back(atom());
      return n;
    }
    return atom();
  }

  ExprNode atom() {
    skip_ws();
    if (pos_ == text_.size()) fail({"number", "identifier", "'('", "'-'"}, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprNode e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail({"number", "identifier", "'('", "'-'"}, std::string("unexpected character '") + c + "'");
  }

  ExprNode number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) {
      pos_ = start;
      fail({"digit"}, "malformed number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        pos_ = mark + 1;
        fail({"exponent digits"}, "malformed exponent");
      }
    }
    ExprNode node;
    node.kind = ExprNode::Kind::number;
    node.value = std::strtod(std::string(text_.substr(start, pos_ - start)).c_str(), nullptr);
    return node;
  }

  ExprNode identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    ExprNode node;
    if (name == "pi") {
      node.kind = ExprNode::Kind::pi;
      return node;
    }
    if (name == variable_name(var_)) {
      node.kind = ExprNode::Kind::variable;
      return node;
    }
    if (name == "theta" || name == "t")
      throw WrongVariable(start, "variable '" + std::string(name) + "' at offset " + std::to_string(start) +
                                     " is not valid here; use '" + std::string(variable_name(var_)) + "'");
    for (const auto& [fname, fn] : function_names) {
      if (name == fname) {
        node.kind = ExprNode::Kind::call;
        node.func = fn;
        expect('(');
        node.args.push_back(expr());
        expect(')');
        return node;
      }
    }
    throw UnknownIdentifier(start, "unknown identifier '" + std::string(name) + "' at offset " +
                                       std::to_string(start));
  }

  std::string_view text_;
  Variable var_;
  std::size_t pos_ = 0;
};

inline double apply(Func f, double x) {
  switch (f) {
  case Func::sin: return std::sin(x);
  case Func::cos: return std::cos(x);
  case Func::tan: return std::tan(x);
  case Func::exp: return std::exp(x);
  case Func::log: return std::log(x);
  case Func::sqrt: return std::sqrt(x);
  case Func::abs: return std::abs(x);
  case Func::atan: return std::atan(x);
  }
  return std::nan("");
}

inline double eval_node(const ExprNode& n, double arg) {
  using K = ExprNode::Kind;
  switch (n.kind) {
  case K::number: return n.value;
  case K::pi: return std::numbers::pi;
  case K::variable: return arg;
  case K::negate: return -eval_node(n.args[0], arg);
  case K::add: return eval_node(n.args[0], arg) + eval_node(n.args[1], arg);
  case K::subtract: return eval_node(n.args[0], arg) - eval_node(n.args[1], arg);
  case K::multiply: return eval_node(n.args[0], arg) * eval_node(n.args[1], arg);
  case K::divide: return eval_node(n.args[0], arg) / eval_node(n.args[1], arg);
  case K::power: return std::pow(eval_node(n.args[0], arg), eval_node(n.args[1], arg));
  case K::call: return apply(n.func, eval_node(n.args[0], arg));
  }
  return std::nan("");
}

inline std::string render_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string render_node(const ExprNode& n, Variable var) {
  using K = ExprNode::Kind;
  auto bin = [&](const char* op) {
    return "(" + render_node(n.args[0], var) + op + render_node(n.args[1], var) + ")";
  };
  switch (n.kind) {
  case K::number: return render_number(n.value);
  case K::pi: return "pi";
  case K::variable: return std::string(variable_name(var));
  case K::negate: return "-(" + render_node(n.args[0], var) + ")";
  case K::add: return bin("+");
  case K::subtract: return bin("-");
  case K::multiply: return bin("*");
  case K::divide: return bin("/");
  case K::power: return bin("^");
  case K::call: return std::string(function_name(n.func)) + "(" + render_node(n.args[0], var) + ")";
  }
  return "";
}

} // namespace detail

/// Parsed boundary expression in one variable. Immutable; evaluation is reentrant.
class BoundaryExpr {
public:
  static BoundaryExpr parse(std::string_view text, Variable var) {
    BoundaryExpr e;
    e.var_ = var;
    e.root_ = detail::ExprParser(text, var).parse();
    return e;
  }

  /// Throws EvaluationError when the result is NaN or infinite.
  double eval(double arg) const {
    const double v = detail::eval_node(root_, arg);
    if (!std::isfinite(v))
      throw EvaluationError("expression '" + render() + "' is not finite at " +
                            std::string(variable_name(var_)) + " = " + detail::render_number(arg));
    return v;
  }

  double operator()(double arg) const { return eval(arg); }

  /// Fully parenthesized text that parses back to the same tree.
  std::string render() const { return detail::render_node(root_, var_); }

  const ExprNode& root() const noexcept { return root_; }
  Variable variable() const noexcept { return var_; }

  friend bool operator==(const BoundaryExpr&, const BoundaryExpr&) = default;

private:
  ExprNode root_;
  Variable var_ = Variable::t;
};

} // namespace bimon
