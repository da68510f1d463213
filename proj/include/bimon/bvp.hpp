#pragma once

/**
 * @file bvp.hpp
 * @brief The (1-4)-problem: find a monogenic Phi whose components U1 and U4 take
 * prescribed values on the boundary of the upper half-plane or the unit disk.
 *
 * Two independent routes are provided:
 *
 *  - explicit: hypercomplex Schwartz-type integrals evaluated in B arithmetic,
 *      half-plane  Phi = S[u1] e1 + S[u4] i e2 + a1 i e1 + a2 e2,
 *      disk        Phi = S[u1] e1 + S[u4] i e2 + ((b1 + i b2) zeta + b)(e1 + i e2) + a1 i e1 + a2 e2;
 *  - pipeline: solve Re F = u1 - u4, then Re F0 = (u4 - Im t Im F')/2, then build Phi from (F, F0).
 *
 * Solutions are unique modulo the constant family a1 i e1 + a2 e2.
 */

#include <bimon/algebra.hpp>
#include <bimon/boundary.hpp>
#include <bimon/monogenic.hpp>
#include <bimon/parallel.hpp>
#include <bimon/quadrature.hpp>
#include <bimon/schwarz.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace bimon {

enum class Method { explicit_formula, pipeline };

inline std::string to_string(Method m) { return m == Method::explicit_formula ? "explicit" : "pipeline"; }

inline BoundaryDomain boundary_domain(DomainTag d) {
  if (d == DomainTag::unit_disk) return BoundaryDomain::circle;
  if (d == DomainTag::upper_half_plane) return BoundaryDomain::realline;
  throw std::invalid_argument("the (1-4)-problem is posed on the unit disk or the upper half-plane");
}

/// Default quadrature for a domain: circle trapezoid or tangent Gauss-Legendre.
inline QuadratureSpec default_spec(DomainTag d, int nodes = 2048) {
  return d == DomainTag::unit_disk ? circle_spec(nodes) : realline_spec(nodes);
}

struct Problem14 {
  DomainTag domain = DomainTag::unit_disk;
  BoundaryData u1;
  BoundaryData u4;
  double a1 = 0.0;
  double a2 = 0.0;

  void validate() const {
    const BoundaryDomain bd = boundary_domain(domain);
    if (!u1 || !u4) throw std::invalid_argument("problem needs both u1 and u4");
    if (u1.domain() != bd || u4.domain() != bd)
      throw std::invalid_argument("boundary data do not live on the boundary of the problem domain");
    if (bd == BoundaryDomain::realline) {
      if (!u1.value_at_infinity()) limit_at_infinity(u1);
      if (!u4.value_at_infinity()) limit_at_infinity(u4);
    }
  }
};

struct SolutionConstants {
  double a1 = 0.0, a2 = 0.0;
  std::optional<double> b1, b2, b;
};

struct ResidualReport {
  double boundary_sup_U1 = 0.0;
  double boundary_sup_U4 = 0.0;
  double cr_max = 0.0;
  double biharmonic_max = 0.0;
  std::string grid;
};

struct Solution {
  Problem14 problem;
  MonogenicFn Phi;
  /// Boundary values of Phi via the limit operators (theta or t).
  std::function<BiNumber(double)> boundary;
  /// Phi(infinity) for the half-plane.
  std::optional<BiNumber> at_infinity;
  Method method = Method::explicit_formula;
  QuadratureSpec spec;
  SolutionConstants constants;
  std::optional<ResidualReport> report;
  bool verified = false;
};

inline BiNumber homogeneous_value(double a1, double a2) {
  return BiNumber(Complex(0.0, a1), Complex(a2)); // a1 i e1 + a2 e2
}

/// General solution of the zero-data problem: the constant field a1 i e1 + a2 e2.
inline MonogenicFn homogeneous(double a1, double a2, DomainTag tag = DomainTag::entire) {
  const BiNumber c = homogeneous_value(a1, a2);
  return MonogenicFn([c](const BiPoint&) { return c; }, tag,
                     AnalyticPair{make_constant(Complex(0.0, a1 + a2)), make_constant(Complex(0.0, -a2 / 2.0))});
}

// ---------------------------------------------------------------------------
// Half-plane

/// (1/pi i) \int u(t) (1 + t zeta)(t^2 + 1)^{-1} (t - zeta)^{-1} dt in B arithmetic.
inline BiNumber schwartz_integral_halfplane(const BoundaryData& u, const BiPoint& zeta, const QuadratureSpec& spec) {
  detail::check_halfplane_point(complex_shadow(zeta));
  spec.validate();
  const BiNumber zb = embed(zeta);
  // The kernel reproduces constants, so integrate u - u(x) and add u(x) e1.
  const double u0 = u(zeta.x);
  const int n = realline_nodes_for(spec, complex_shadow(zeta));
  const auto vals = u.grid_values(n);
  const BiNumber s = tan_gauss_legendre(n, [&](std::size_t k, double t) {
    const BiNumber kernel = (BiNumber(1.0) + t * zb) * inv(BiNumber(t) - zb) / (t * t + 1.0);
    return ((*vals)[k] - u0) * kernel;
  });
  return BiNumber(u0) + s / Complex(0.0, std::numbers::pi);
}

/// u(xi) e1 + (1/pi i) PV \int u(t) (1 + t xi)/((t^2 + 1)(t - xi)) dt e1.
inline BiNumber boundary_limit_halfplane(const BoundaryData& u, double xi, const QuadratureSpec& spec) {
  return BiNumber(halfplane_boundary_value(u, xi, spec));
}

/// u(inf) e1 - (1/pi i) \int u(t) t/(t^2 + 1) dt e1 (symmetric at infinity).
inline BiNumber limit_at_infinity_halfplane(const BoundaryData& u, const QuadratureSpec& spec) {
  return BiNumber(halfplane_limit_at_infinity(u, spec));
}

inline Solution solve_halfplane(const Problem14& p, const QuadratureSpec& spec) {
  if (p.domain != DomainTag::upper_half_plane) throw std::invalid_argument("solve_halfplane needs a half-plane problem");
  p.validate();
  spec.validate();
  const BiNumber ie2(Complex(0.0), Complex(0.0, 1.0));
  const BiNumber hom = homogeneous_value(p.a1, p.a2);
  Solution sol;
  sol.problem = p;
  sol.method = Method::explicit_formula;
  sol.spec = spec;
  sol.constants = {p.a1, p.a2, std::nullopt, std::nullopt, std::nullopt};
  const BoundaryData u1 = p.u1, u4 = p.u4;
  sol.Phi = MonogenicFn(
      [=](const BiPoint& z) {
        return schwartz_integral_halfplane(u1, z, spec) + schwartz_integral_halfplane(u4, z, spec) * ie2 + hom;
      },
      DomainTag::upper_half_plane);
  sol.boundary = [=](double xi) {
    return boundary_limit_halfplane(u1, xi, spec) + boundary_limit_halfplane(u4, xi, spec) * ie2 + hom;
  };
  sol.at_infinity = limit_at_infinity_halfplane(u1, spec) + limit_at_infinity_halfplane(u4, spec) * ie2 + hom;
  return sol;
}

// ---------------------------------------------------------------------------
// Disk

/// (1/2 pi i) \oint u(tau)(tau + zeta)(tau - zeta)^{-1} tau^{-1} dtau over the unit circle of
/// the biharmonic plane, tau(theta) = cos(theta) e1 + sin(theta) e2, in B arithmetic.
inline BiNumber schwartz_integral_disk(const BoundaryData& u, const BiPoint& zeta, const QuadratureSpec& spec) {
  const Complex z = complex_shadow(zeta);
  detail::check_disk_point(z);
  spec.validate();
  const BiNumber zb = embed(zeta);
  const double u0 = u(std::arg(z));
  const int n = circle_nodes_for(spec, 1.0 - std::abs(z));
  const auto vals = u.grid_values(n);
  const auto nodes = circle_nodes(n);
  const BiNumber s = trapezoid_circle(n, [&](std::size_t k, double) {
    const BiNumber& tau = nodes->tau[k];
    const BiNumber kernel = (tau + zb) * inv(tau - zb) * nodes->tau_inv[k] * nodes->dtau[k];
    return ((*vals)[k] - u0) * kernel;
  });
  return BiNumber(u0) + s / Complex(0.0, 2.0 * std::numbers::pi);
}

struct DiskConstants {
  double b1 = 0.0, b2 = 0.0, b = 0.0;
};

namespace detail {

// \oint u(t) t^{-p} dt over |t| = 1, dt = i t dtheta.
inline Complex circle_moment(const BoundaryData& u, int p, const QuadratureSpec& spec) {
  const auto vals = u.grid_values(spec.nodes);
  const auto nodes = circle_nodes(spec.nodes);
  return trapezoid_circle(spec.nodes, [&](std::size_t k, double) {
    const Complex t = nodes->t[k];
    return (*vals)[k] * std::pow(t, -p) * Complex(0.0, 1.0) * t;
  });
}

} // namespace detail

/// b1 = -Im M2 / 2pi, b2 = -Re M2 / 2pi, b = -Im M3 / 2pi with M_p = \oint (u1 - u4) t^{-p} dt.
inline DiskConstants disk_constants(const BoundaryData& u1, const BoundaryData& u4, const QuadratureSpec& spec) {
  spec.validate();
  detail::require_circle(u1);
  detail::require_circle(u4);
  const Complex m2 = detail::circle_moment(u1, 2, spec) - detail::circle_moment(u4, 2, spec);
  const Complex m3 = detail::circle_moment(u1, 3, spec) - detail::circle_moment(u4, 3, spec);
  const double two_pi = 2.0 * std::numbers::pi;
  return {-m2.imag() / two_pi, -m2.real() / two_pi, -m3.imag() / two_pi};
}

/// Boundary values of the disk integral:
///   u e1 + S0[u] e1 + ((x - i y)/2pi \oint u/t^2 dt + 1/2pi \oint u/t^3 dt)(e2 - i e1),
/// with S0[u] = i * (harmonic conjugate of u) from the Fourier series.
class DiskBoundaryLimit {
public:
  DiskBoundaryLimit(BoundaryData u, const QuadratureSpec& spec)
      : u_(std::move(u)), conj_(conjugate_boundary_disk(u_, spec)), m2_(detail::circle_moment(u_, 2, spec)),
        m3_(detail::circle_moment(u_, 3, spec)) {}

  BiNumber operator()(double theta) const {
    const double x = std::cos(theta), y = std::sin(theta);
    const double two_pi = 2.0 * std::numbers::pi;
    const Complex s0(0.0, conj_(theta));
    const Complex coef = Complex(x, -y) / two_pi * m2_ + m3_ / two_pi;
    const BiNumber e2_minus_ie1(Complex(0.0, -1.0), Complex(1.0));
    return BiNumber(u_(theta) + s0) + coef * e2_minus_ie1;
  }

private:
  BoundaryData u_;
  std::function<double(double)> conj_;
  Complex m2_, m3_;
};

inline BiNumber boundary_limit_disk(const BoundaryData& u, double theta, const QuadratureSpec& spec) {
  return DiskBoundaryLimit(u, spec)(theta);
}

inline Solution solve_disk(const Problem14& p, const QuadratureSpec& spec) {
  if (p.domain != DomainTag::unit_disk) throw std::invalid_argument("solve_disk needs a unit-disk problem");
  p.validate();
  spec.validate();
  const DiskConstants bc = disk_constants(p.u1, p.u4, spec);
  const BiNumber ie2(Complex(0.0), Complex(0.0, 1.0));
  const BiNumber nil_dir(Complex(1.0), Complex(0.0, 1.0)); // e1 + i e2 = rho / 2
  const BiNumber hom = homogeneous_value(p.a1, p.a2);
  const Complex slope(bc.b1, bc.b2);
  Solution sol;
  sol.problem = p;
  sol.method = Method::explicit_formula;
  sol.spec = spec;
  sol.constants = {p.a1, p.a2, bc.b1, bc.b2, bc.b};
  const BoundaryData u1 = p.u1, u4 = p.u4;
  const double b = bc.b;
  sol.Phi = MonogenicFn(
      [=](const BiPoint& z) {
        const BiNumber corr = (slope * embed(z) + BiNumber(b)) * nil_dir;
        return schwartz_integral_disk(u1, z, spec) + schwartz_integral_disk(u4, z, spec) * ie2 + corr + hom;
      },
      DomainTag::unit_disk);
  const DiskBoundaryLimit lim1(u1, spec), lim4(u4, spec);
  sol.boundary = [=](double th) {
    const BiNumber tau(Complex(std::cos(th)), Complex(std::sin(th)));
    const BiNumber corr = (slope * tau + BiNumber(b)) * nil_dir;
    return lim1(th) + lim4(th) * ie2 + corr + hom;
  };
  return sol;
}

// ---------------------------------------------------------------------------
// Pipeline (two successive Schwarz problems)

inline Solution solve_pipeline(const Problem14& p, const QuadratureSpec& spec) {
  p.validate();
  spec.validate();
  const BoundaryData h = combine(1.0, p.u1, -1.0, p.u4);
  const SchwarzSolution F = schwarz(h, p.domain, spec);
  std::function<Complex(double)> fprime;
  if (p.domain == DomainTag::unit_disk) fprime = disk_derivative_trace(h, spec);
  const SchwarzSolution F0 = solve_F0(p.u4, fprime, p.domain, spec);

  const BiNumber hom = homogeneous_value(p.a1, p.a2);
  const MonogenicFn base = from_pair(AnalyticPair{F.F, F0.F});
  Solution sol;
  sol.problem = p;
  sol.method = Method::pipeline;
  sol.spec = spec;
  sol.constants = {p.a1, p.a2, std::nullopt, std::nullopt, std::nullopt};
  sol.Phi = MonogenicFn([base, hom](const BiPoint& z) { return base(z) + hom; }, p.domain, base.pair());
  const Complex i(0.0, 1.0);
  if (p.domain == DomainTag::unit_disk) {
    sol.boundary = [=, fb = F.boundary_value, f0b = F0.boundary_value](double th) {
      const double y = std::sin(th);
      const Complex Fv = fb(th), dF = fprime(th), F0v = f0b(th);
      return BiNumber(Fv - i * y * dF + 2.0 * F0v, i * (2.0 * F0v - i * y * dF)) + hom;
    };
  } else {
    sol.boundary = [=, fb = F.boundary_value, f0b = F0.boundary_value](double xi) {
      const Complex Fv = fb(xi), F0v = f0b(xi);
      return BiNumber(Fv + 2.0 * F0v, i * 2.0 * F0v) + hom;
    };
    sol.at_infinity = BiNumber(*F.at_infinity) + *F0.at_infinity * BiNumber::rho() + hom;
  }
  return sol;
}

inline Solution solve(const Problem14& p, Method method, const QuadratureSpec& spec) {
  if (method == Method::pipeline) return solve_pipeline(p, spec);
  return p.domain == DomainTag::unit_disk ? solve_disk(p, spec) : solve_halfplane(p, spec);
}

// ---------------------------------------------------------------------------
// Grids, comparison, residuals

/// Tensor grid. Polar: outer = radii, inner = angles. Rectangular: outer = x, inner = y.
/// Points are ordered outer-major.
struct Grid {
  enum class Kind { polar, rect };
  Kind kind = Kind::polar;
  std::vector<double> outer;
  std::vector<double> inner;

  static Grid polar(std::vector<double> radii, int ntheta) {
    Grid g{Kind::polar, std::move(radii), {}};
    for (int j = 0; j < ntheta; ++j) g.inner.push_back(2.0 * std::numbers::pi * j / ntheta);
    return g;
  }

  static Grid rect(double x_min, double x_max, int nx, double y_min, double y_max, int ny) {
    Grid g{Kind::rect, linspace(x_min, x_max, nx), linspace(y_min, y_max, ny)};
    return g;
  }

  std::size_t size() const { return outer.size() * inner.size(); }

  std::vector<BiPoint> points() const {
    std::vector<BiPoint> pts;
    pts.reserve(size());
    for (double o : outer)
      for (double in : inner)
        pts.push_back(kind == Kind::polar ? BiPoint{o * std::cos(in), o * std::sin(in)} : BiPoint{o, in});
    return pts;
  }

  std::string description() const {
    if (kind == Kind::polar)
      return "polar outer=r n=" + std::to_string(outer.size()) + " inner=theta n=" + std::to_string(inner.size());
    return "rect outer=x n=" + std::to_string(outer.size()) + " inner=y n=" + std::to_string(inner.size());
  }

  static std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int k = 0; k < n; ++k) v[k] = n == 1 ? a : a + (b - a) * k / (n - 1);
    return v;
  }
};

/// Disk: r = 0.1..0.9 by 0.1, 64 angles. Half-plane: x in [-5, 5] (41), y in [0.1, 5] (25).
inline Grid default_grid(DomainTag d) {
  if (d == DomainTag::unit_disk) return Grid::polar({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}, 64);
  return Grid::rect(-5.0, 5.0, 41, 0.1, 5.0, 25);
}

inline std::vector<ComponentQuad> evaluate_grid(const MonogenicFn& phi, const std::vector<BiPoint>& pts,
                                                unsigned threads = default_thread_count()) {
  std::vector<ComponentQuad> out(pts.size());
  parallel_for(pts.size(), threads, [&](std::size_t i) { out[i] = components(phi(pts[i])); });
  return out;
}

struct Comparison {
  double max_dU1 = 0.0, max_dU4 = 0.0;
  double offset_U2 = 0.0, offset_U3 = 0.0;  // mean of (b - a)
  double spread_U2 = 0.0, spread_U3 = 0.0;  // max - min of (b - a)
  std::size_t points = 0;

  bool agrees(double tol) const {
    return max_dU1 <= tol && max_dU4 <= tol && spread_U2 <= tol && spread_U3 <= tol;
  }
};

inline Comparison compare_fields(const std::vector<ComponentQuad>& a, const std::vector<ComponentQuad>& b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("comparison needs two equal nonempty samples");
  Comparison c;
  c.points = a.size();
  double lo2 = INFINITY, hi2 = -INFINITY, lo3 = INFINITY, hi3 = -INFINITY, sum2 = 0.0, sum3 = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    c.max_dU1 = std::max(c.max_dU1, std::abs(b[k].U1 - a[k].U1));
    c.max_dU4 = std::max(c.max_dU4, std::abs(b[k].U4 - a[k].U4));
    const double d2 = b[k].U2 - a[k].U2, d3 = b[k].U3 - a[k].U3;
    lo2 = std::min(lo2, d2);
    hi2 = std::max(hi2, d2);
    lo3 = std::min(lo3, d3);
    hi3 = std::max(hi3, d3);
    sum2 += d2;
    sum3 += d3;
  }
  c.offset_U2 = sum2 / double(a.size());
  c.offset_U3 = sum3 / double(a.size());
  c.spread_U2 = hi2 - lo2;
  c.spread_U3 = hi3 - lo3;
  return c;
}

/// U1, U4 must agree and U2, U3 may differ only by constants.
inline Comparison compare_mod_homogeneous(const MonogenicFn& a, const MonogenicFn& b, const std::vector<BiPoint>& pts,
                                          unsigned threads = default_thread_count()) {
  return compare_fields(evaluate_grid(a, pts, threads), evaluate_grid(b, pts, threads));
}

inline Comparison compare_mod_homogeneous(const Solution& a, const Solution& b, const std::vector<BiPoint>& pts,
                                          unsigned threads = default_thread_count()) {
  if (a.problem.domain != b.problem.domain) throw std::invalid_argument("solutions live on different domains");
  return compare_mod_homogeneous(a.Phi, b.Phi, pts, threads);
}

struct VerifyOptions {
  int boundary_samples = 256;
  int interior_points = 100;
  double clearance = 0.05;
  double cr_step = 1e-4;
  double biharmonic_step = 0.01;
  /// Use the h/2h extrapolated stencil; the plain stencil's O(h^2) error alone exceeds
  /// 1e-4 near the half-plane boundary for rational data.
  bool extrapolate_biharmonic = true;
  std::uint64_t seed = 20160601;
  unsigned threads = default_thread_count();
  double boundary_tolerance = 1e-6;
  double cr_tolerance = 1e-4;
  double biharmonic_tolerance = 1e-4;
};

/// Boundary parameters used for residuals: equispaced angles, or t = tan(s) for s equispaced in (-pi/2, pi/2).
inline std::vector<double> boundary_samples(DomainTag d, int n) {
  std::vector<double> s(n);
  for (int k = 0; k < n; ++k)
    s[k] = d == DomainTag::unit_disk ? 2.0 * std::numbers::pi * k / n
                                     : std::tan(std::numbers::pi * (k + 0.5) / n - std::numbers::pi / 2);
  return s;
}

/// Pseudo-random interior points at distance >= clearance from the boundary (fixed seed).
inline std::vector<BiPoint> random_interior_points(DomainTag d, int n, double clearance, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<BiPoint> pts(n);
  for (auto& p : pts) {
    const double a = unit(rng), b = unit(rng);
    if (d == DomainTag::unit_disk) {
      const double r = (1.0 - clearance) * std::sqrt(a), th = 2.0 * std::numbers::pi * b;
      p = {r * std::cos(th), r * std::sin(th)};
    } else {
      p = {-5.0 + 10.0 * a, clearance + (5.0 - clearance) * b};
    }
  }
  return pts;
}

namespace detail {
inline std::string render_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}
} // namespace detail

inline ResidualReport compute_residuals(const Solution& sol, const VerifyOptions& opt = {}) {
  const DomainTag d = sol.problem.domain;
  ResidualReport r;
  const auto bs = boundary_samples(d, opt.boundary_samples);
  std::vector<double> e1(bs.size()), e4(bs.size());
  parallel_for(bs.size(), opt.threads, [&](std::size_t k) {
    const ComponentQuad q = components(sol.boundary(bs[k]));
    e1[k] = std::abs(q.U1 - sol.problem.u1(bs[k]));
    e4[k] = std::abs(q.U4 - sol.problem.u4(bs[k]));
  });
  for (std::size_t k = 0; k < bs.size(); ++k) {
    r.boundary_sup_U1 = std::max(r.boundary_sup_U1, e1[k]);
    r.boundary_sup_U4 = std::max(r.boundary_sup_U4, e4[k]);
  }
  const auto pts = random_interior_points(d, opt.interior_points, opt.clearance, opt.seed);
  std::vector<double> cr(pts.size()), bh(pts.size());
  parallel_for(pts.size(), opt.threads, [&](std::size_t k) {
    cr[k] = check_cr(sol.Phi, pts[k], opt.cr_step);
    const auto b4 = opt.extrapolate_biharmonic ? check_biharmonic_extrapolated(sol.Phi, pts[k], opt.biharmonic_step)
                                               : check_biharmonic(sol.Phi, pts[k], opt.biharmonic_step);
    bh[k] = *std::max_element(b4.begin(), b4.end());
  });
  for (std::size_t k = 0; k < pts.size(); ++k) {
    r.cr_max = std::max(r.cr_max, cr[k]);
    r.biharmonic_max = std::max(r.biharmonic_max, bh[k]);
  }
  r.grid = std::to_string(opt.boundary_samples) + " boundary samples; " + std::to_string(opt.interior_points) +
           " interior points at clearance " + detail::render_short(opt.clearance) + " (seed " +
           std::to_string(opt.seed) + ")";
  return r;
}

/// Attach a residual report and mark the solution verified when every threshold holds.
inline bool verify(Solution& sol, const VerifyOptions& opt = {}) {
  sol.report = compute_residuals(sol, opt);
  const ResidualReport& r = *sol.report;
  sol.verified = r.boundary_sup_U1 <= opt.boundary_tolerance && r.boundary_sup_U4 <= opt.boundary_tolerance &&
                 r.cr_max <= opt.cr_tolerance && r.biharmonic_max <= opt.biharmonic_tolerance;
  return sol.verified;
}

} // namespace bimon
