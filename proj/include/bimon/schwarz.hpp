#pragma once

/**
 * @file schwarz.hpp
 * @brief Complex Schwarz problems: recover F analytic with Re F = h on the boundary.
 *
 * Disk:        F(z) = (1/2 pi i) \oint h(t) (t + z)/(t - z) dt/t,   Im F(0) = 0.
 * Half-plane:  F(z) = (1/pi i) \int h(t) (1 + t z)/((t^2 + 1)(t - z)) dt,   Im F(i) = 0.
 *
 * Both kernels reproduce constants exactly, so interior evaluations integrate
 * h - h(p) against the kernel and add h(p) back, where p is the boundary point
 * nearest to z. Derivatives use the differentiated kernels 2t/(t - z)^2 (disk)
 * and 1/(t - z)^2 (half-plane), whose integrals of constants vanish.
 */

#include <bimon/analytic.hpp>
#include <bimon/boundary.hpp>
#include <bimon/errors.hpp>
#include <bimon/quadrature.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>

namespace bimon {

/// Interior points closer than this to the boundary are rejected.
inline constexpr double evaluation_clearance = 1e-6;

struct SchwarzSolution {
  AnalyticFn F;
  std::string normalization;
  /// Boundary values of F: argument is theta (disk) or t (half-plane).
  std::function<Complex(double)> boundary_value;
  /// Boundary values of F' (disk only; empty for the half-plane).
  std::function<Complex(double)> boundary_derivative;
  /// Limit of F at infinity (half-plane only).
  std::optional<Complex> at_infinity;
};

namespace detail {

inline void require_circle(const BoundaryData& h) {
  if (h.domain() != BoundaryDomain::circle) throw std::invalid_argument("disk Schwarz problem needs circle data");
}

inline void require_realline(const BoundaryData& h) {
  if (h.domain() != BoundaryDomain::realline)
    throw std::invalid_argument("half-plane Schwarz problem needs real-line data");
  if (!h.value_at_infinity()) limit_at_infinity(h); // throws NoFiniteLimit with the samples
}

inline void check_disk_point(Complex z) {
  if (!(std::abs(z) < 1.0 - evaluation_clearance))
    throw EvaluationOutsideDomain("point " + format_complex(z) + " is not inside the unit disk");
}

inline void check_halfplane_point(Complex z) {
  if (!(z.imag() > evaluation_clearance))
    throw EvaluationOutsideDomain("point " + format_complex(z) + " is not inside the upper half-plane");
}

inline double nearest_angle(Complex z) { return std::arg(z); }

// Disk Schwarz integral and its derivative at z, singularity-subtracted.
inline Complex disk_value(const BoundaryData& h, Complex z, const QuadratureSpec& spec) {
  const double h0 = h(nearest_angle(z));
  const int n = circle_nodes_for(spec, 1.0 - std::abs(z));
  const auto vals = h.grid_values(n);
  const auto nodes = circle_nodes(n);
  // (1/2 pi i) \oint g dt/t = (1/2 pi) \int g dtheta
  const Complex s = trapezoid_circle(n, [&](std::size_t k, double) {
    const Complex t = nodes->t[k];
    return ((*vals)[k] - h0) * (t + z) / (t - z);
  });
  return h0 + s / (2.0 * std::numbers::pi);
}

inline Complex disk_derivative(const BoundaryData& h, Complex z, const QuadratureSpec& spec) {
  const double h0 = h(nearest_angle(z));
  const int n = circle_nodes_for(spec, 1.0 - std::abs(z));
  const auto vals = h.grid_values(n);
  const auto nodes = circle_nodes(n);
  const Complex s = trapezoid_circle(n, [&](std::size_t k, double) {
    const Complex t = nodes->t[k];
    const Complex d = t - z;
    return ((*vals)[k] - h0) * 2.0 * t / (d * d);
  });
  return s / (2.0 * std::numbers::pi);
}

inline Complex halfplane_value(const BoundaryData& h, Complex z, const QuadratureSpec& spec) {
  const double h0 = h(z.real());
  const int n = realline_nodes_for(spec, z);
  const auto vals = h.grid_values(n);
  const Complex s = tan_gauss_legendre(n, [&](std::size_t k, double t) {
    return ((*vals)[k] - h0) * (1.0 + t * z) / ((t - z) * (t * t + 1.0));
  });
  return h0 + s / Complex(0.0, std::numbers::pi);
}

inline Complex halfplane_derivative(const BoundaryData& h, Complex z, const QuadratureSpec& spec) {
  const double h0 = h(z.real());
  const int n = realline_nodes_for(spec, z);
  const auto vals = h.grid_values(n);
  const Complex s = tan_gauss_legendre(n, [&](std::size_t k, double t) {
    const Complex d = t - z;
    return ((*vals)[k] - h0) / (d * d);
  });
  return s / Complex(0.0, std::numbers::pi);
}

} // namespace detail

/// Boundary values of the harmonic conjugate of h (mean-zero), by Fourier conjugation:
/// sum_k -i sgn(k) c_k e^{ik theta}. Equals S_0[h]/i for smooth data.
inline std::function<double(double)> conjugate_boundary_disk(const BoundaryData& h, const QuadratureSpec& spec) {
  detail::require_circle(h);
  spec.validate();
  const auto c = h.fourier(spec.nodes);
  const std::size_t top = static_cast<std::size_t>(spec.nodes) / 2;
  return [c, top](double th) {
    double v = 0.0;
    for (std::size_t k = 1; k < top; ++k) v += 2.0 * ((*c)[k] * std::polar(1.0, double(k) * th)).imag();
    return v;
  };
}

namespace detail {

// F(e^{i theta}) and F'(e^{i theta}) from the Fourier series of h, truncated below Nyquist.
inline Complex disk_trace_value(const std::vector<Complex>& c, std::size_t top, double th) {
  Complex v = c[0].real();
  for (std::size_t k = 1; k < top; ++k) v += 2.0 * c[k] * std::polar(1.0, double(k) * th);
  return v;
}

inline Complex disk_trace_derivative(const std::vector<Complex>& c, std::size_t top, double th) {
  Complex v = 0.0;
  for (std::size_t k = 1; k < top; ++k) v += 2.0 * double(k) * c[k] * std::polar(1.0, double(k - 1) * th);
  return v;
}

} // namespace detail

/// Boundary trace of F' for the disk Schwarz solution of h. The series at N nodes is
/// compared with the one at 2N nodes on 64 angles; TraceUnavailable if they differ by
/// more than 1e-6 (1 + sup |F'|).
inline std::function<Complex(double)> disk_derivative_trace(const BoundaryData& h, const QuadratureSpec& spec) {
  detail::require_circle(h);
  spec.validate();
  const auto c = h.fourier(spec.nodes);
  const auto c2 = h.fourier(2 * spec.nodes);
  const std::size_t top = static_cast<std::size_t>(spec.nodes) / 2;
  double diff = 0.0, sup = 0.0;
  for (int j = 0; j < 64; ++j) {
    const double th = 2.0 * std::numbers::pi * (j + 0.5) / 64.0;
    const Complex a = detail::disk_trace_derivative(*c, top, th);
    const Complex b = detail::disk_trace_derivative(*c2, 2 * top, th);
    diff = std::max(diff, std::abs(a - b));
    sup = std::max(sup, std::abs(b));
  }
  if (!(diff <= 1e-6 * (1.0 + sup)))
    throw TraceUnavailable("boundary trace of F' does not stabilize under refinement (change " +
                           detail::render_number(diff) + ")");
  return [c, top](double th) { return detail::disk_trace_derivative(*c, top, th); };
}

inline SchwarzSolution schwarz_disk(const BoundaryData& h, const QuadratureSpec& spec) {
  detail::require_circle(h);
  spec.validate();
  SchwarzSolution sol;
  sol.F = AnalyticFn(
      [h, spec](Complex z) {
        detail::check_disk_point(z);
        return detail::disk_value(h, z, spec);
      },
      [h, spec](Complex z) {
        detail::check_disk_point(z);
        return detail::disk_derivative(h, z, spec);
      },
      DomainTag::unit_disk);
  sol.normalization = "Im F(0) = 0";
  const auto c = h.fourier(spec.nodes);
  const std::size_t top = static_cast<std::size_t>(spec.nodes) / 2;
  sol.boundary_value = [c, top](double th) { return detail::disk_trace_value(*c, top, th); };
  sol.boundary_derivative = [c, top](double th) { return detail::disk_trace_derivative(*c, top, th); };
  return sol;
}

/// Limit at infinity of the half-plane Schwarz integral: h(inf) - (1/pi i) \int (h - h(inf)) t/(t^2+1) dt.
inline Complex halfplane_limit_at_infinity(const BoundaryData& h, const QuadratureSpec& spec) {
  detail::require_realline(h);
  const double h_inf = *h.value_at_infinity();
  const double m = integrate_realline([&](double t) { return (h(t) - h_inf) * t / (t * t + 1.0); }, spec);
  return h_inf - Complex(m) / Complex(0.0, std::numbers::pi);
}

/// Boundary value h(xi) + (1/pi i) PV \int h(t) (1 + t xi)/((t^2+1)(t - xi)) dt.
inline Complex halfplane_boundary_value(const BoundaryData& h, double xi, const QuadratureSpec& spec) {
  return h(xi) + Complex(pv_subtracted(h, xi, spec)) / Complex(0.0, std::numbers::pi);
}

inline SchwarzSolution schwarz_halfplane(const BoundaryData& h, const QuadratureSpec& spec) {
  detail::require_realline(h);
  spec.validate();
  SchwarzSolution sol;
  sol.F = AnalyticFn(
      [h, spec](Complex z) {
        detail::check_halfplane_point(z);
        return detail::halfplane_value(h, z, spec);
      },
      [h, spec](Complex z) {
        detail::check_halfplane_point(z);
        return detail::halfplane_derivative(h, z, spec);
      },
      DomainTag::upper_half_plane);
  sol.normalization = "Im F(i) = 0";
  sol.boundary_value = [h, spec](double xi) { return halfplane_boundary_value(h, xi, spec); };
  sol.at_infinity = halfplane_limit_at_infinity(h, spec);
  return sol;
}

/// Dispatch on the problem domain.
inline SchwarzSolution schwarz(const BoundaryData& h, DomainTag domain, const QuadratureSpec& spec) {
  switch (domain) {
  case DomainTag::unit_disk: return schwarz_disk(h, spec);
  case DomainTag::upper_half_plane: return schwarz_halfplane(h, spec);
  case DomainTag::entire: break;
  }
  throw std::invalid_argument("Schwarz problems are posed on the unit disk or the upper half-plane");
}

/// F with Re F = u1 - u4 on the boundary.
inline SchwarzSolution solve_F(const BoundaryData& u1, const BoundaryData& u4, DomainTag domain,
                               const QuadratureSpec& spec) {
  return schwarz(combine(1.0, u1, -1.0, u4), domain, spec);
}

/// F0 with Re F0 = (u4 - Im t Im F'(t)) / 2 on the boundary. On the real line Im t = 0,
/// so the derivative trace is never evaluated there.
inline SchwarzSolution solve_F0(const BoundaryData& u4, std::function<Complex(double)> fprime_boundary,
                                DomainTag domain, const QuadratureSpec& spec) {
  if (domain == DomainTag::upper_half_plane) {
    const auto zero = BoundaryData::from_callable([](double) { return 0.0; }, BoundaryDomain::realline, 0.0, "0");
    return schwarz(combine(0.5, u4, 0.0, zero), domain, spec);
  }
  if (!fprime_boundary) throw TraceUnavailable("disk F0 problem needs the boundary trace of F'");
  auto h0 = BoundaryData::from_callable(
      [u4, fp = std::move(fprime_boundary)](double th) { return 0.5 * (u4(th) - std::sin(th) * fp(th).imag()); },
      BoundaryDomain::circle, std::nullopt, "(u4 - Im t Im F')/2");
  return schwarz(h0, domain, spec);
}

} // namespace bimon
