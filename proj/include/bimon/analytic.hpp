#pragma once

#include <bimon/algebra.hpp>
#include <bimon/errors.hpp>

#include <algorithm>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bimon {

enum class DomainTag { unit_disk, upper_half_plane, entire };

inline std::string to_string(DomainTag t) {
  switch (t) {
  case DomainTag::unit_disk: return "unit-disk";
  case DomainTag::upper_half_plane: return "upper-half-plane";
  case DomainTag::entire: return "entire";
  }
  return "unknown";
}

/// Pointwise evaluator of a complex analytic function and its first derivative.
///
/// Instances are cheap to copy (shared immutable state) and safe to evaluate
/// from several threads at once.
class AnalyticFn {
public:
  using map_type = std::function<Complex(Complex)>;

  AnalyticFn() = default;
  AnalyticFn(map_type value, map_type derivative, DomainTag tag)
      : impl_(std::make_shared<const Impl>(Impl{std::move(value), std::move(derivative)})), tag_(tag) {}

  Complex operator()(Complex z) const { return impl_->value(z); }
  Complex value(Complex z) const { return impl_->value(z); }
  Complex derivative(Complex z) const { return impl_->derivative(z); }
  DomainTag domain_tag() const noexcept { return tag_; }
  explicit operator bool() const noexcept { return static_cast<bool>(impl_); }

private:
  struct Impl {
    map_type value;
    map_type derivative;
  };
  std::shared_ptr<const Impl> impl_;
  DomainTag tag_ = DomainTag::entire;
};

struct AnalyticPair {
  AnalyticFn F;
  AnalyticFn F0;
};

inline AnalyticPair make_pair(AnalyticFn F, AnalyticFn F0) {
  if (F.domain_tag() != F0.domain_tag() && F.domain_tag() != DomainTag::entire &&
      F0.domain_tag() != DomainTag::entire)
    throw std::invalid_argument("analytic pair members carry different domain tags");
  return {std::move(F), std::move(F0)};
}

namespace detail {

// Horner evaluation of p and p' together; coefficients in ascending degree.
inline std::pair<Complex, Complex> horner(std::span<const Complex> c, Complex z) {
  Complex p = 0.0, dp = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

} // namespace detail

/// Polynomial sum_k coeffs[k] z^k.
inline AnalyticFn make_polynomial(std::vector<Complex> coeffs, DomainTag tag = DomainTag::entire) {
  if (coeffs.empty())
    throw std::invalid_argument("polynomial needs at least one coefficient");
  auto c = std::make_shared<const std::vector<Complex>>(std::move(coeffs));
  return AnalyticFn([c](Complex z) { return detail::horner(*c, z).first; },
                    [c](Complex z) { return detail::horner(*c, z).second; }, tag);
}

/// Rational function num(z)/den(z). The caller asserts den has no zeros in the domain;
/// evaluating closer than |den| < 1e-300 raises PoleInDomain.
inline AnalyticFn make_rational(std::vector<Complex> num, std::vector<Complex> den,
                                DomainTag tag = DomainTag::entire) {
  if (num.empty() || den.empty())
    throw std::invalid_argument("rational function needs nonempty numerator and denominator");
  struct Parts {
    std::vector<Complex> num, den;
  };
  auto p = std::make_shared<const Parts>(Parts{std::move(num), std::move(den)});
  auto check = [](Complex q, Complex z) {
    if (std::abs(q) < 1e-300)
      throw PoleInDomain("rational function evaluated at a pole near z = " + detail::format_complex(z));
  };
  return AnalyticFn(
      [p, check](Complex z) {
        const Complex q = detail::horner(p->den, z).first;
        check(q, z);
        return detail::horner(p->num, z).first / q;
      },
      [p, check](Complex z) {
        const auto [n, dn] = detail::horner(p->num, z);
        const auto [q, dq] = detail::horner(p->den, z);
        check(q, z);
        return (dn * q - n * dq) / (q * q);
      },
      tag);
}

inline AnalyticFn make_constant(Complex c, DomainTag tag = DomainTag::entire) {
  return make_polynomial({c}, tag);
}

/// Max over points of |(F(z+h) - F(z-h))/(2h) - F'(z)|.
inline double fd_derivative_check(const AnalyticFn& F, std::span<const Complex> points, double h = 1e-5) {
  double worst = 0.0;
  for (const Complex z : points) {
    const Complex fd = (F(z + h) - F(z - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - F.derivative(z)));
  }
  return worst;
}

} // namespace bimon
