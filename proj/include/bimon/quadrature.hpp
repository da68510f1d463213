#pragma once

/**
 * @file quadrature.hpp
 * @brief Fixed-order rules for integrals over the unit circle and the real line.
 *
 * Circle integrals use the periodic trapezoid rule on N equispaced angles.
 * Real-line integrals substitute t = tan(s) and apply N-point Gauss-Legendre
 * on s in (-pi/2, pi/2). Every sum runs in ascending node order, so a result
 * depends only on the integrand and N.
 *
 * Evaluation points close to the contour use more nodes than QuadratureSpec::nodes:
 * the count is multiplied by the smallest power of two that brings the point
 * back to the reference clearance (see circle_nodes_for / realline_nodes_for).
 */

#include <bimon/algebra.hpp>
#include <bimon/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace bimon {

enum class QuadratureRule { circle_trapezoid, realline_tan };
enum class PvMode { none, subtract_singularity };

struct QuadratureSpec {
  int nodes = 2048;
  QuadratureRule rule = QuadratureRule::circle_trapezoid;
  PvMode pv_mode = PvMode::subtract_singularity;

  void validate() const {
    if (nodes < 16)
      throw std::invalid_argument("quadrature needs at least 16 nodes, got " + std::to_string(nodes));
    if (rule == QuadratureRule::circle_trapezoid && nodes % 2 != 0)
      throw std::invalid_argument("circle trapezoid needs an even node count, got " + std::to_string(nodes));
  }
};

inline QuadratureSpec circle_spec(int nodes = 2048) { return {nodes, QuadratureRule::circle_trapezoid}; }
inline QuadratureSpec realline_spec(int nodes = 2048) { return {nodes, QuadratureRule::realline_tan}; }

inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }
inline bool is_finite(const BiNumber& v) { return is_finite(v.z1()) && is_finite(v.z2()); }

// ---------------------------------------------------------------------------
// Node tables

struct GaussLegendreRule {
  std::vector<double> nodes;   // ascending, on (-1, 1)
  std::vector<double> weights;
};

namespace detail {

inline GaussLegendreRule compute_gauss_legendre(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)) *
               (1.0 - (1.0 - 1.0 / n) / (8.0 * double(n) * n));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

template <class T, class Make>
std::shared_ptr<const T> cached_table(int n, Make make) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const T>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const T>(make(n));
  return slot;
}

} // namespace detail

/// Gauss-Legendre rule on [-1, 1]; computed once per n and shared.
inline std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
  return detail::cached_table<GaussLegendreRule>(n, detail::compute_gauss_legendre);
}

/// Nodes of the tangent-substituted rule: t_k = tan(s_k) and weights w_k * dt/ds.
struct RealLineNodes {
  std::vector<double> t;
  std::vector<double> weight;
};

inline std::shared_ptr<const RealLineNodes> realline_nodes(int n) {
  return detail::cached_table<RealLineNodes>(n, [](int m) {
    const auto gl = gauss_legendre(m);
    RealLineNodes out;
    out.t.resize(m);
    out.weight.resize(m);
    const double half_pi = std::numbers::pi / 2;
    for (int k = 0; k < m; ++k) {
      const double s = half_pi * gl->nodes[k];
      const double c = std::cos(s);
      out.t[k] = std::tan(s);
      out.weight[k] = half_pi * gl->weights[k] / (c * c);
    }
    return out;
  });
}

/// Points tau_k = cos(theta_k) e1 + sin(theta_k) e2 of the unit circle of the
/// biharmonic plane, with their inverses and d tau / d theta.
struct CircleNodes {
  std::vector<double> theta;
  std::vector<Complex> t;  // e^{i theta}
  std::vector<BiNumber> tau, tau_inv, dtau;
};

inline std::shared_ptr<const CircleNodes> circle_nodes(int n) {
  return detail::cached_table<CircleNodes>(n, [](int m) {
    CircleNodes c;
    c.theta.resize(m);
    c.t.resize(m);
    c.tau.resize(m);
    c.tau_inv.resize(m);
    c.dtau.resize(m);
    for (int k = 0; k < m; ++k) {
      const double th = 2.0 * std::numbers::pi * k / m;
      const double cs = std::cos(th), sn = std::sin(th);
      c.theta[k] = th;
      c.t[k] = {cs, sn};
      c.tau[k] = {Complex(cs), Complex(sn)};
      c.tau_inv[k] = inv(c.tau[k]);
      c.dtau[k] = {Complex(-sn), Complex(cs)};
    }
    return c;
  });
}

// ---------------------------------------------------------------------------
// Refinement near the contour

inline constexpr int circle_node_cap = 1 << 20;
inline constexpr int realline_node_cap = 1 << 13;
/// Distance from the unit circle resolved without refinement.
inline constexpr double circle_reference_clearance = 1.0 / 128;
/// Bernstein-ellipse excess rho-1 resolved without refinement.
inline constexpr double realline_reference_excess = 1.0 / 512;

namespace detail {
inline int pow2_at_least(double ratio) {
  int f = 1;
  while (f < ratio && f < (1 << 20)) f *= 2;
  return f;
}
} // namespace detail

/// Node count for a trapezoid evaluation at distance `distance` from the unit circle.
inline int circle_nodes_for(const QuadratureSpec& spec, double distance) {
  if (distance >= circle_reference_clearance) return spec.nodes;
  const long long f = detail::pow2_at_least(circle_reference_clearance / std::max(distance, 1e-12));
  return std::max(spec.nodes, static_cast<int>(std::min<long long>(spec.nodes * f, circle_node_cap)));
}

/// Node count for a tangent-Gauss-Legendre evaluation of a kernel with a pole at z (Im z > 0).
inline int realline_nodes_for(const QuadratureSpec& spec, Complex z) {
  // Pole of the substituted integrand sits at s = atan(z); scaled to [-1, 1].
  const Complex w = std::atan(z) / (std::numbers::pi / 2);
  Complex r = w + std::sqrt(w * w - 1.0);
  double rho = std::abs(r);
  if (rho < 1.0) rho = 1.0 / rho;
  const double excess = rho - 1.0;
  if (!(excess < realline_reference_excess)) return spec.nodes;
  const long long f = detail::pow2_at_least(realline_reference_excess / std::max(excess, 1e-12));
  return std::max(spec.nodes, static_cast<int>(std::min<long long>(spec.nodes * f, realline_node_cap)));
}

// ---------------------------------------------------------------------------
// Sums

/// (2 pi / n) sum_k g(k, theta_k), theta_k = 2 pi k / n.
template <class G>
auto trapezoid_circle(int n, G&& g) {
  using V = decltype(g(std::size_t{0}, 0.0));
  const auto nodes = circle_nodes(n);
  V acc{};
  for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) acc += g(k, nodes->theta[k]);
  return acc * (2.0 * std::numbers::pi / n);
}

/// Periodic trapezoid rule for a 2 pi-periodic integrand g(theta).
template <class G>
auto integrate_circle(G&& g, const QuadratureSpec& spec) {
  spec.validate();
  return trapezoid_circle(spec.nodes, [&](std::size_t, double th) { return g(th); });
}

/// sum_k W_k g(k, t_k) over the tangent-substituted Gauss-Legendre rule with n nodes.
template <class G>
auto tan_gauss_legendre(int n, G&& g) {
  using V = decltype(g(std::size_t{0}, 0.0));
  const auto nodes = realline_nodes(n);
  V acc{};
  for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
    const V v = g(k, nodes->t[k]);
    if (!is_finite(v))
      throw NonFiniteSample("integrand is not finite at t = " + std::to_string(nodes->t[k]));
    acc += v * nodes->weight[k];
  }
  return acc;
}

/// Integral of g over the real line via t = tan(s).
template <class G>
auto integrate_realline(G&& g, const QuadratureSpec& spec) {
  spec.validate();
  return tan_gauss_legendre(spec.nodes, [&](std::size_t, double t) { return g(t); });
}

/// Principal value of  int u(t) (1 + t xi) / ((t^2 + 1)(t - xi)) dt  over the real line.
///
/// The kernel splits as 1/(t - xi) - t/(t^2 + 1), whose principal value is zero,
/// so only (u(t) - u(xi)) K(t, xi) is integrated. Its removable singularity at
/// t = xi is filled with the limit u'(xi).
template <class U>
double pv_subtracted(U&& u, double xi, const QuadratureSpec& spec) {
  spec.validate();
  if (spec.pv_mode == PvMode::none)
    throw std::invalid_argument("principal-value evaluation requested with pv_mode = none");
  const double u_xi = u(xi);
  const double tol = 1e-9 * (1.0 + std::abs(xi));
  return tan_gauss_legendre(spec.nodes, [&](std::size_t, double t) {
    if (std::abs(t - xi) <= tol) {
      const double h = 1e-6 * (1.0 + std::abs(xi));
      return (u(xi + h) - u(xi - h)) / (2.0 * h);
    }
    return (u(t) - u_xi) * (1.0 + t * xi) / ((t * t + 1.0) * (t - xi));
  });
}

} // namespace bimon
