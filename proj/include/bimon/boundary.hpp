#pragma once

/**
 * @file boundary.hpp
 * @brief Real boundary data on the unit circle (2 pi-periodic in theta) or on the real line.
 *
 * BoundaryData wraps an expression, a sample table or an arbitrary callable.
 * Real-line data carry the limit value at infinity, which the half-plane
 * solvers require. Values on the quadrature grids are memoized per node count,
 * so repeated integrals over the same data evaluate it only once per node.
 */

#include <bimon/errors.hpp>
#include <bimon/expr.hpp>
#include <bimon/quadrature.hpp>

#include <cmath>
// Boost 1.74's pchip calls isnan unqualified.
namespace boost::math::interpolators {
using std::isnan;
}
#include <boost/math/interpolators/pchip.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace bimon {

enum class BoundaryDomain { circle, realline };

inline Variable variable_for(BoundaryDomain d) { return d == BoundaryDomain::circle ? Variable::theta : Variable::t; }

class NotPeriodic : public input_error {
public:
  using input_error::input_error;
};

/// Estimate the limit of u at +-infinity from samples at +-1e6 and +-1e8.
/// The +-1e8 pair must agree within 1e-6 (1 + |value|) and the +-1e6 pair must lie
/// within 1e-4 (1 + |value|) of it (algebraic decay); otherwise NoFiniteLimit.
template <class U>
double estimate_limit_at_infinity(U&& u) {
  const double s[4] = {u(-1e8), u(-1e6), u(1e6), u(1e8)};
  const double value = (s[0] + s[3]) / 2.0;
  const double scale = 1.0 + std::abs(value);
  const bool ok = std::isfinite(s[0]) && std::isfinite(s[1]) && std::isfinite(s[2]) && std::isfinite(s[3]) &&
                  std::abs(s[0] - s[3]) <= 1e-6 * scale && std::abs(s[1] - value) <= 1e-4 * scale &&
                  std::abs(s[2] - value) <= 1e-4 * scale;
  if (!ok)
    throw NoFiniteLimit("boundary data have no finite limit at infinity (samples " + detail::render_number(s[0]) +
                        ", " + detail::render_number(s[1]) + ", " + detail::render_number(s[2]) + ", " +
                        detail::render_number(s[3]) + ")");
  return value;
}

namespace detail {

/// Coefficients c_k, k = 0..n/2, of u(theta) = sum c_k e^{ik theta} from n equispaced samples.
inline std::vector<Complex> fourier_coefficients(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  const auto nodes = circle_nodes(static_cast<int>(n));
  std::vector<Complex> c(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += samples[j] * std::conj(nodes->t[(j * k) % n]);
    c[k] = acc / double(n);
  }
  return c;
}

/// Real trigonometric interpolant through the coefficients (Nyquist term as a cosine).
inline double eval_trig(const std::vector<Complex>& c, std::size_t n, double theta) {
  double v = c[0].real();
  const std::size_t top = n / 2;
  for (std::size_t k = 1; k < top; ++k) v += 2.0 * (c[k] * std::polar(1.0, double(k) * theta)).real();
  v += c[top].real() * std::cos(double(top) * theta);
  return v;
}

} // namespace detail

class BoundaryData {
public:
  using callable = std::function<double(double)>;

  BoundaryData() = default;

  static BoundaryData from_callable(callable fn, BoundaryDomain domain, std::optional<double> value_at_infinity,
                                    std::string description) {
    BoundaryData d;
    d.impl_ = std::make_shared<Impl>();
    d.impl_->fn = std::move(fn);
    d.impl_->domain = domain;
    d.impl_->at_infinity = value_at_infinity;
    d.impl_->description = std::move(description);
    return d;
  }

  /// Real-line callable with the limit at infinity estimated numerically (absent if none exists).
  static BoundaryData from_callable(callable fn, BoundaryDomain domain, std::string description) {
    std::optional<double> lim;
    if (domain == BoundaryDomain::realline) {
      try {
        lim = estimate_limit_at_infinity(fn);
      } catch (const NoFiniteLimit&) {
      } catch (const EvaluationError&) {
      }
    }
    return from_callable(std::move(fn), domain, lim, std::move(description));
  }

  /// Parse an expression in theta (circle) or t (real line).
  /// Circle expressions must be 2 pi-periodic (checked at 8 points within 1e-10).
  static BoundaryData from_expression(std::string_view text, BoundaryDomain domain) {
    auto expr = std::make_shared<const BoundaryExpr>(BoundaryExpr::parse(text, variable_for(domain)));
    if (domain == BoundaryDomain::circle) {
      for (int k = 0; k < 8; ++k) {
        const double th = 0.1 + 0.77 * k;
        const double a = expr->eval(th), b = expr->eval(th + 2.0 * std::numbers::pi);
        if (std::abs(a - b) > 1e-10 * (1.0 + std::abs(a)))
          throw NotPeriodic("circle data '" + std::string(text) + "' are not 2*pi-periodic");
      }
    }
    BoundaryData d = from_callable([expr](double x) { return expr->eval(x); }, domain, std::string(text));
    d.impl_->expr = expr;
    return d;
  }

  /// Sample table. Circle: equispaced angles 2 pi k / M ascending from 0, M a power of two,
  /// interpolated trigonometrically. Real line: ascending abscissae (optionally -inf / inf
  /// rows giving the limit), interpolated by a monotone cubic in s = atan(t).
  static BoundaryData from_samples(std::vector<std::pair<double, double>> rows, BoundaryDomain domain,
                                   std::string description = "samples") {
    if (domain == BoundaryDomain::circle) return circle_table(std::move(rows), std::move(description));
    return realline_table(std::move(rows), std::move(description));
  }

  /// Two-column CSV "arg,value" with one header line.
  static BoundaryData from_csv(const std::string& path, BoundaryDomain domain) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open sample file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw input_error("sample file '" + path + "' is empty");
    std::vector<std::pair<double, double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos)
        throw input_error(path + ":" + std::to_string(lineno) + ": expected 'arg,value'");
      char* end = nullptr;
      const std::string a = line.substr(0, comma), v = line.substr(comma + 1);
      const double arg = std::strtod(a.c_str(), &end);
      if (end == a.c_str()) throw input_error(path + ":" + std::to_string(lineno) + ": bad argument");
      const double val = std::strtod(v.c_str(), &end);
      if (end == v.c_str() || !std::isfinite(val))
        throw input_error(path + ":" + std::to_string(lineno) + ": bad value");
      rows.emplace_back(arg, val);
    }
    return from_samples(std::move(rows), domain, path);
  }

  double operator()(double arg) const { return impl_->fn(arg); }

  BoundaryDomain domain() const { return impl_->domain; }
  std::optional<double> value_at_infinity() const { return impl_->at_infinity; }
  const std::string& description() const { return impl_->description; }
  /// The parsed expression, when the data came from one.
  const BoundaryExpr* expression() const { return impl_->expr.get(); }
  explicit operator bool() const noexcept { return static_cast<bool>(impl_); }

  /// Values at theta_k = 2 pi k / n (circle) or at the tangent-Gauss-Legendre nodes (real line).
  std::shared_ptr<const std::vector<double>> grid_values(int n) const {
    return memo(impl_->values, n, [&] {
      std::vector<double> v(n);
      if (impl_->domain == BoundaryDomain::circle) {
        const auto nodes = circle_nodes(n);
        for (int k = 0; k < n; ++k) v[k] = (*this)(nodes->theta[k]);
      } else {
        const auto nodes = realline_nodes(n);
        for (int k = 0; k < n; ++k) v[k] = (*this)(nodes->t[k]);
      }
      return v;
    });
  }

  /// Fourier coefficients c_0..c_{n/2} from n equispaced samples (circle data only).
  std::shared_ptr<const std::vector<Complex>> fourier(int n) const {
    return memo(impl_->fourier, n, [&] { return detail::fourier_coefficients(*grid_values(n)); });
  }

  /// a*u + b*v on the same domain.
  friend BoundaryData combine(double a, const BoundaryData& u, double b, const BoundaryData& v) {
    if (u.domain() != v.domain()) throw std::invalid_argument("cannot combine boundary data on different domains");
    std::optional<double> lim;
    if (u.value_at_infinity() && v.value_at_infinity()) lim = a * *u.value_at_infinity() + b * *v.value_at_infinity();
    return from_callable([a, b, u, v](double x) { return a * u(x) + b * v(x); }, u.domain(), lim,
                         detail::render_number(a) + "*[" + u.description() + "] + " + detail::render_number(b) +
                             "*[" + v.description() + "]");
  }

private:
  struct Impl {
    callable fn;
    BoundaryDomain domain = BoundaryDomain::circle;
    std::optional<double> at_infinity;
    std::string description;
    std::shared_ptr<const BoundaryExpr> expr;
    std::mutex mutex;
    std::map<int, std::shared_ptr<const std::vector<double>>> values;
    std::map<int, std::shared_ptr<const std::vector<Complex>>> fourier;
  };

  template <class T, class Make>
  std::shared_ptr<const std::vector<T>> memo(std::map<int, std::shared_ptr<const std::vector<T>>>& cache, int n,
                                             Make make) const {
    {
      std::lock_guard lock(impl_->mutex);
      auto it = cache.find(n);
      if (it != cache.end()) return it->second;
    }
    // Computed outside the lock; concurrent first calls produce identical tables.
    auto table = std::make_shared<const std::vector<T>>(make());
    std::lock_guard lock(impl_->mutex);
    auto [it, inserted] = cache.emplace(n, table);
    return it->second;
  }

  static BoundaryData circle_table(std::vector<std::pair<double, double>> rows, std::string description) {
    const std::size_t m = rows.size();
    if (m < 4 || (m & (m - 1)) != 0)
      throw input_error("circle sample tables need a power-of-two row count (>= 4), got " + std::to_string(m));
    for (std::size_t k = 0; k < m; ++k) {
      const double expect = 2.0 * std::numbers::pi * double(k) / double(m);
      // 1e-5 admits angles printed with six significant digits
      if (std::abs(rows[k].first - expect) > 1e-5)
        throw input_error("circle samples must sit at 2*pi*k/M ascending from 0; row " + std::to_string(k) +
                          " has angle " + detail::render_number(rows[k].first));
    }
    std::vector<double> vals(m);
    for (std::size_t k = 0; k < m; ++k) vals[k] = rows[k].second;
    auto coeffs = std::make_shared<const std::vector<Complex>>(detail::fourier_coefficients(vals));
    return from_callable([coeffs, m](double th) { return detail::eval_trig(*coeffs, m, th); },
                         BoundaryDomain::circle, std::nullopt, std::move(description));
  }

  static BoundaryData realline_table(std::vector<std::pair<double, double>> rows, std::string description) {
    std::optional<double> lim_lo, lim_hi;
    std::vector<double> s, v;
    for (const auto& [t, val] : rows) {
      if (std::isinf(t)) {
        (t < 0 ? lim_lo : lim_hi) = val;
        continue;
      }
      if (!s.empty() && !(std::atan(t) > s.back()))
        throw input_error("real-line sample abscissae must be strictly ascending");
      s.push_back(std::atan(t));
      v.push_back(val);
    }
    if (lim_lo && lim_hi && std::abs(*lim_lo - *lim_hi) > 1e-12 * (1.0 + std::abs(*lim_lo)))
      throw NoFiniteLimit("sample table gives different limits at -inf and +inf");
    const double half_pi = std::numbers::pi / 2;
    if (lim_lo) {
      s.insert(s.begin(), -half_pi);
      v.insert(v.begin(), *lim_lo);
    }
    if (lim_hi) {
      s.push_back(half_pi);
      v.push_back(*lim_hi);
    }
    if (s.size() < 4) throw input_error("real-line sample tables need at least 4 rows");
    const double lo = s.front(), hi = s.back(), v_lo = v.front(), v_hi = v.back();
    auto spline = std::make_shared<const boost::math::interpolators::pchip<std::vector<double>>>(std::move(s),
                                                                                               std::move(v));
    auto fn = [spline, lo, hi, v_lo, v_hi](double t) {
      const double sv = std::atan(t);
      if (sv <= lo) return v_lo;
      if (sv >= hi) return v_hi;
      return (*spline)(sv);
    };
    std::optional<double> lim;
    try {
      lim = estimate_limit_at_infinity(fn);
    } catch (const NoFiniteLimit&) {
    }
    return from_callable(fn, BoundaryDomain::realline, lim, std::move(description));
  }

  std::shared_ptr<Impl> impl_;
};

/// The limit value of real-line data at infinity (the 4-sample estimator).
inline double limit_at_infinity(const BoundaryData& u) {
  if (u.domain() != BoundaryDomain::realline)
    throw std::invalid_argument("limit at infinity is defined for real-line data only");
  return estimate_limit_at_infinity(u);
}

} // namespace bimon
