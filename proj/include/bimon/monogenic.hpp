#pragma once

/**
 * @file monogenic.hpp
 * @brief Monogenic functions of the biharmonic plane and their numerical checks.
 *
 * A pair (F, F0) of analytic functions determines
 *
 *   Phi(zeta) = (F(z) - i y F'(z) + 2 F0(z)) e1 + i (2 F0(z) - i y F'(z)) e2,
 *
 * with zeta = x e1 + y e2 and z = x + i y. The real components are
 * Phi = U1 e1 + U2 i e1 + U3 e2 + U4 i e2.
 */

#include <bimon/algebra.hpp>
#include <bimon/analytic.hpp>
#include <bimon/boundary.hpp>

#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <utility>

namespace bimon {

struct ComponentQuad {
  double U1 = 0.0, U2 = 0.0, U3 = 0.0, U4 = 0.0;

  double operator[](int l) const {
    switch (l) {
    case 1: return U1;
    case 2: return U2;
    case 3: return U3;
    default: return U4;
    }
  }
};

inline ComponentQuad components(const BiNumber& a) {
  return {a.z1().real(), a.z1().imag(), a.z2().real(), a.z2().imag()};
}

inline BiNumber from_components(const ComponentQuad& c) { return {Complex(c.U1, c.U2), Complex(c.U3, c.U4)}; }

/// A B-valued field on a domain of the biharmonic plane.
class MonogenicFn {
public:
  using field_type = std::function<BiNumber(const BiPoint&)>;

  MonogenicFn() = default;
  MonogenicFn(field_type field, DomainTag tag, std::optional<AnalyticPair> pair = std::nullopt)
      : field_(std::make_shared<const field_type>(std::move(field))), tag_(tag), pair_(std::move(pair)) {}

  BiNumber operator()(const BiPoint& p) const { return (*field_)(p); }
  DomainTag domain_tag() const noexcept { return tag_; }
  /// The generating analytic pair, when the field was built from one.
  const std::optional<AnalyticPair>& pair() const noexcept { return pair_; }

  friend MonogenicFn operator+(const MonogenicFn& a, const MonogenicFn& b) {
    return MonogenicFn([a, b](const BiPoint& p) { return a(p) + b(p); }, a.tag_);
  }

private:
  std::shared_ptr<const field_type> field_;
  DomainTag tag_ = DomainTag::entire;
  std::optional<AnalyticPair> pair_;
};

inline BiNumber evaluate_pair(const AnalyticPair& pair, const BiPoint& p) {
  const Complex z = complex_shadow(p);
  const Complex i(0.0, 1.0);
  const Complex F = pair.F(z), dF = pair.F.derivative(z), F0 = pair.F0(z);
  return {F - i * p.y * dF + 2.0 * F0, i * (2.0 * F0 - i * p.y * dF)};
}

inline MonogenicFn from_pair(const AnalyticPair& pair) {
  const DomainTag tag = pair.F.domain_tag() != DomainTag::entire ? pair.F.domain_tag() : pair.F0.domain_tag();
  return MonogenicFn([pair](const BiPoint& p) { return evaluate_pair(pair, p); }, tag, pair);
}

inline ComponentQuad components(const MonogenicFn& phi, const BiPoint& p) { return components(phi(p)); }

struct HyperDerivative {
  BiNumber value;                    // central difference along e1
  double direction_discrepancy = 0;  // norm of (e1 estimate - e2 estimate)
};

/// Derivative along e1, with the e2-direction estimate (right-multiplied by e2^-1)
/// reported as a discrepancy rather than averaged in.
inline HyperDerivative hyper_derivative(const MonogenicFn& phi, const BiPoint& p, double h) {
  const BiNumber dx = (phi({p.x + h, p.y}) - phi({p.x - h, p.y})) / (2.0 * h);
  const BiNumber dy = (phi({p.x, p.y + h}) - phi({p.x, p.y - h})) / (2.0 * h) * inv(BiNumber::e2());
  return {dx, norm(dx - dy)};
}

/// norm(dPhi/dy e1 - dPhi/dx e2) by central differences.
inline double check_cr(const MonogenicFn& phi, const BiPoint& p, double h = 1e-4) {
  const BiNumber dx = (phi({p.x + h, p.y}) - phi({p.x - h, p.y})) / (2.0 * h);
  const BiNumber dy = (phi({p.x, p.y + h}) - phi({p.x, p.y - h})) / (2.0 * h);
  return norm(dy * BiNumber::e1() - dx * BiNumber::e2());
}

namespace detail {

inline BiNumber biharmonic_stencil(const MonogenicFn& phi, const BiPoint& p, double h) {
  const auto at = [&](int i, int j) { return phi({p.x + i * h, p.y + j * h}); };
  const BiNumber c = at(0, 0);
  const BiNumber axis1 = at(1, 0) + at(-1, 0) + at(0, 1) + at(0, -1);
  const BiNumber diag = at(1, 1) + at(1, -1) + at(-1, 1) + at(-1, -1);
  const BiNumber axis2 = at(2, 0) + at(-2, 0) + at(0, 2) + at(0, -2);
  return (20.0 * c - 8.0 * axis1 + 2.0 * diag + axis2) / (h * h * h * h);
}

inline std::array<double, 4> abs_components(const BiNumber& v) {
  const ComponentQuad q = components(v);
  return {std::abs(q.U1), std::abs(q.U2), std::abs(q.U3), std::abs(q.U4)};
}

} // namespace detail

/// |Delta^2 U_l| for l = 1..4 with the 13-point stencil of step h.
inline std::array<double, 4> check_biharmonic(const MonogenicFn& phi, const BiPoint& p, double h = 0.02) {
  return detail::abs_components(detail::biharmonic_stencil(phi, p, h));
}

/// Same residual with the O(h^2) stencil error removed: (4 D(h) - D(2h)) / 3.
/// Needs clearance > 4h.
inline std::array<double, 4> check_biharmonic_extrapolated(const MonogenicFn& phi, const BiPoint& p, double h = 0.01) {
  const BiNumber fine = detail::biharmonic_stencil(phi, p, h);
  const BiNumber coarse = detail::biharmonic_stencil(phi, p, 2.0 * h);
  return detail::abs_components((4.0 * fine - coarse) / 3.0);
}

/// Boundary traces u1 = U1, u4 = U4 of a field that extends continuously to the boundary
/// (theta on the circle, t on the real line).
inline std::pair<BoundaryData, BoundaryData> trace_from_monogenic(const MonogenicFn& phi, DomainTag domain) {
  if (domain == DomainTag::unit_disk) {
    auto at = [phi](double th) { return components(phi({std::cos(th), std::sin(th)})); };
    return {BoundaryData::from_callable([at](double th) { return at(th).U1; }, BoundaryDomain::circle, "trace U1"),
            BoundaryData::from_callable([at](double th) { return at(th).U4; }, BoundaryDomain::circle, "trace U4")};
  }
  if (domain == DomainTag::upper_half_plane) {
    auto at = [phi](double t) { return components(phi({t, 0.0})); };
    return {BoundaryData::from_callable([at](double t) { return at(t).U1; }, BoundaryDomain::realline, "trace U1"),
            BoundaryData::from_callable([at](double t) { return at(t).U4; }, BoundaryDomain::realline, "trace U4")};
  }
  throw std::invalid_argument("traces are taken on the unit circle or the real line");
}

} // namespace bimon
