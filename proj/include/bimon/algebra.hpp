#pragma once

/**
 * @file algebra.hpp
 * @brief Arithmetic in the biharmonic algebra.
 *
 * The algebra is two-dimensional over the complex numbers with basis
 * {e1, e2}, where e1 is the unit and e2^2 = e1 + 2i e2. The element
 * rho = 2 e1 + 2i e2 is nilpotent (rho^2 = 0), and {1, rho} is a second
 * basis in which multiplication is
 *
 *   (a + alpha rho)(b + beta rho) = ab + (a beta + alpha b) rho.
 *
 * An element is invertible exactly when its rho-free coordinate is nonzero.
 */

#include <bimon/errors.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <string>

namespace bimon {

using Complex = std::complex<double>;

/// Coordinates of an element in the {1, rho} basis: value = first + second * rho.
template <class T>
struct nilpotent_coords {
  std::complex<T> first;
  std::complex<T> second;
};

template <class T>
class basic_binumber {
public:
  using value_type = T;
  using complex_type = std::complex<T>;

  constexpr basic_binumber() = default;
  constexpr basic_binumber(complex_type z1, complex_type z2) : z1_(z1), z2_(z2) {}
  /// A complex scalar embeds as a multiple of the unit e1.
  constexpr basic_binumber(complex_type scalar) : z1_(scalar) {} // NOLINT(google-explicit-constructor)
  constexpr basic_binumber(T scalar) : z1_(scalar) {}             // NOLINT(google-explicit-constructor)

  static constexpr basic_binumber e1() { return {complex_type(1), complex_type(0)}; }
  static constexpr basic_binumber e2() { return {complex_type(0), complex_type(1)}; }
  static constexpr basic_binumber rho() { return {complex_type(2), complex_type(0, 2)}; }

  /// Coefficient of e1.
  constexpr complex_type z1() const { return z1_; }
  /// Coefficient of e2.
  constexpr complex_type z2() const { return z2_; }

  constexpr basic_binumber& operator+=(const basic_binumber& o) {
    z1_ += o.z1_;
    z2_ += o.z2_;
    return *this;
  }
  constexpr basic_binumber& operator-=(const basic_binumber& o) {
    z1_ -= o.z1_;
    z2_ -= o.z2_;
    return *this;
  }
  constexpr basic_binumber& operator*=(const basic_binumber& o) {
    // (a1 + a2 e2)(b1 + b2 e2) with e2^2 = 1 + 2i e2
    const complex_type a1 = z1_, a2 = z2_;
    const complex_type two_i(0, 2);
    z1_ = a1 * o.z1_ + a2 * o.z2_;
    z2_ = a1 * o.z2_ + a2 * o.z1_ + two_i * a2 * o.z2_;
    return *this;
  }
  constexpr basic_binumber& operator*=(complex_type s) {
    z1_ *= s;
    z2_ *= s;
    return *this;
  }
  constexpr basic_binumber& operator/=(complex_type s) {
    z1_ /= s;
    z2_ /= s;
    return *this;
  }

  friend constexpr basic_binumber operator+(basic_binumber a, const basic_binumber& b) { return a += b; }
  friend constexpr basic_binumber operator-(basic_binumber a, const basic_binumber& b) { return a -= b; }
  friend constexpr basic_binumber operator-(const basic_binumber& a) { return {-a.z1_, -a.z2_}; }
  friend constexpr basic_binumber operator*(basic_binumber a, const basic_binumber& b) { return a *= b; }
  friend constexpr basic_binumber operator*(basic_binumber a, complex_type s) { return a *= s; }
  friend constexpr basic_binumber operator*(complex_type s, basic_binumber a) { return a *= s; }
  friend constexpr basic_binumber operator*(basic_binumber a, T s) { return a *= complex_type(s); }
  friend constexpr basic_binumber operator*(T s, basic_binumber a) { return a *= complex_type(s); }
  friend constexpr basic_binumber operator/(basic_binumber a, complex_type s) { return a /= s; }
  friend constexpr basic_binumber operator/(basic_binumber a, T s) { return a /= complex_type(s); }

  friend constexpr bool operator==(const basic_binumber& a, const basic_binumber& b) {
    return a.z1_ == b.z1_ && a.z2_ == b.z2_;
  }

private:
  complex_type z1_{};
  complex_type z2_{};
};

using BiNumber = basic_binumber<double>;

/// Point x e1 + y e2 of the biharmonic plane.
struct BiPoint {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const BiPoint&, const BiPoint&) = default;
};

inline BiNumber embed(const BiPoint& p) { return {Complex(p.x), Complex(p.y)}; }

/// The point z = x + iy of the complex plane congruent to p.
inline Complex complex_shadow(const BiPoint& p) { return {p.x, p.y}; }

template <class T>
constexpr nilpotent_coords<T> to_nilpotent(const basic_binumber<T>& a) {
  const std::complex<T> i(0, 1);
  return {a.z1() + i * a.z2(), -i * a.z2() / T(2)};
}

template <class T>
constexpr basic_binumber<T> from_nilpotent(std::complex<T> xi1, std::complex<T> xi2) {
  // xi1 + xi2 (2 e1 + 2i e2)
  const std::complex<T> two_i(0, 2);
  return {xi1 + T(2) * xi2, two_i * xi2};
}

template <class T>
constexpr basic_binumber<T> from_nilpotent(const nilpotent_coords<T>& c) {
  return from_nilpotent(c.first, c.second);
}

/// The multiplicative functional with f(1) = 1, f(rho) = 0 (so f(e2) = i).
template <class T>
constexpr std::complex<T> functional_f(const basic_binumber<T>& a) {
  return a.z1() + std::complex<T>(0, 1) * a.z2();
}

template <class T>
T norm(const basic_binumber<T>& a) {
  return std::sqrt(std::norm(a.z1()) + std::norm(a.z2()));
}

/// Products computed through the nilpotent basis; used to cross-check operator*.
template <class T>
constexpr basic_binumber<T> mul_nilpotent(const basic_binumber<T>& a, const basic_binumber<T>& b) {
  const auto x = to_nilpotent(a);
  const auto y = to_nilpotent(b);
  return from_nilpotent(x.first * y.first, x.first * y.second + x.second * y.first);
}

inline constexpr double invertibility_tolerance = 1e-13;

template <class T>
bool is_invertible(const basic_binumber<T>& a) {
  const auto c = to_nilpotent(a);
  return std::abs(c.first) > T(invertibility_tolerance) * std::max(T(1), norm(a));
}

/// Inverse as 1/xi1 - (xi2/xi1^2) rho. Throws NonInvertible on the singular set xi1 = 0.
template <class T>
basic_binumber<T> inv(const basic_binumber<T>& a) {
  const auto c = to_nilpotent(a);
  if (!(std::abs(c.first) > T(invertibility_tolerance) * std::max(T(1), norm(a))))
    throw NonInvertible("element is not invertible: its rho-free coordinate vanishes");
  const std::complex<T> r = T(1) / c.first;
  return from_nilpotent(r, -c.second * r * r);
}

template <class T>
basic_binumber<T> operator/(const basic_binumber<T>& a, const basic_binumber<T>& b) {
  return a * inv(b);
}

namespace detail {
inline std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}
} // namespace detail

/// Renders "z1 e1 + z2 e2" with each coefficient as "a+bi".
inline std::string to_string(const BiNumber& a) {
  return "(" + detail::format_complex(a.z1()) + ") e1 + (" + detail::format_complex(a.z2()) + ") e2";
}

inline std::ostream& operator<<(std::ostream& os, const BiNumber& a) { return os << to_string(a); }

} // namespace bimon
