#pragma once

#include <bimon/bimon.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace bimon::testing {

inline constexpr double pi = std::numbers::pi;

class Random {
public:
  explicit Random(std::uint64_t seed = 12345) : rng_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  Complex complex(double scale = 1.0) { return {uniform(-scale, scale), uniform(-scale, scale)}; }
  BiNumber binumber(double scale = 1.0) { return {complex(scale), complex(scale)}; }

  std::vector<Complex> coeffs(int degree, double scale = 1.0) {
    std::vector<Complex> c(degree + 1);
    for (auto& v : c) v = complex(scale);
    return c;
  }

  /// Point in the disk of radius r_max.
  BiPoint disk_point(double r_max) {
    const double r = r_max * std::sqrt(uniform(0.0, 1.0)), th = uniform(0.0, 2.0 * pi);
    return {r * std::cos(th), r * std::sin(th)};
  }

  BiPoint halfplane_point(double y_min, double y_max = 3.0, double x_max = 3.0) {
    return {uniform(-x_max, x_max), uniform(y_min, y_max)};
  }

private:
  std::mt19937_64 rng_;
};

/// Random trigonometric polynomial sum_{k<=degree} a_k cos k theta + b_k sin k theta.
struct TrigPoly {
  std::vector<double> a, b;

  static TrigPoly random(Random& r, int degree) {
    TrigPoly p;
    for (int k = 0; k <= degree; ++k) {
      p.a.push_back(r.uniform());
      p.b.push_back(k == 0 ? 0.0 : r.uniform());
    }
    return p;
  }

  double operator()(double th) const {
    double v = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) v += a[k] * std::cos(k * th) + b[k] * std::sin(k * th);
    return v;
  }

  /// Disk Schwarz solution with Im F(0) = 0: a_0 + sum (a_k - i b_k) z^k.
  Complex schwarz(Complex z) const {
    Complex v = a[0];
    for (std::size_t k = 1; k < a.size(); ++k) v += Complex(a[k], -b[k]) * std::pow(z, int(k));
    return v;
  }

  BoundaryData data() const {
    const TrigPoly self = *this;
    return BoundaryData::from_callable([self](double th) { return self(th); }, BoundaryDomain::circle, std::nullopt,
                                       "trig polynomial");
  }
};

/// Real-line data Re sum_j c_j / (t - p_j), poles p_j in the lower half-plane, plus a constant.
/// Its half-plane Schwarz solution with Im F(i) = 0 is F(z) = c0 + sum c_j/(z - p_j) - i Im(value at i).
struct RationalData {
  double c0 = 0.0;
  std::vector<Complex> c, p;

  static RationalData random(Random& r, int terms) {
    RationalData d;
    d.c0 = r.uniform();
    for (int j = 0; j < terms; ++j) {
      d.c.push_back(r.complex());
      d.p.push_back({r.uniform(-1.0, 1.0), -r.uniform(0.5, 1.5)});
    }
    return d;
  }

  Complex analytic(Complex z) const {
    Complex v = c0;
    for (std::size_t j = 0; j < c.size(); ++j) v += c[j] / (z - p[j]);
    return v;
  }

  double operator()(double t) const { return analytic(Complex(t)).real(); }

  Complex schwarz(Complex z) const { return analytic(z) - Complex(0.0, analytic(Complex(0.0, 1.0)).imag()); }

  BoundaryData data() const {
    const RationalData self = *this;
    return BoundaryData::from_callable([self](double t) { return self(t); }, BoundaryDomain::realline, c0,
                                       "rational");
  }
};

inline double max_abs_diff(const ComponentQuad& a, const ComponentQuad& b) {
  return std::max({std::abs(a.U1 - b.U1), std::abs(a.U2 - b.U2), std::abs(a.U3 - b.U3), std::abs(a.U4 - b.U4)});
}

} // namespace bimon::testing
