#include "support.hpp"

#include <gtest/gtest.h>

using namespace bimon;
using bimon::testing::pi;
using bimon::testing::Random;

namespace {
const Complex I(0.0, 1.0);
BoundaryData circ(const char* s) { return BoundaryData::from_expression(s, BoundaryDomain::circle); }
BoundaryData line(const char* s) { return BoundaryData::from_expression(s, BoundaryDomain::realline); }
} // namespace

TEST(SchwarzDisk, ReproducesKnownSolutions) {
  const auto s = circle_spec(256);
  EXPECT_LE(std::abs(schwarz_disk(circ("1"), s).F(Complex(0.3, 0.4)) - 1.0), 1e-13);
  const Complex z(0.3, 0.4);
  EXPECT_LE(std::abs(schwarz_disk(circ("cos(theta)"), s).F(z) - z), 1e-10);
  EXPECT_LE(std::abs(schwarz_disk(circ("cos(2*theta)"), s).F(z) - z * z), 1e-10);
  EXPECT_LE(std::abs(schwarz_disk(circ("cos(2*theta)"), s).F.derivative(z) - 2.0 * z), 1e-10);
}

TEST(SchwarzDisk, RejectsPointsOutsideTheDisk) {
  const auto sol = schwarz_disk(circ("cos(theta)"), circle_spec(64));
  EXPECT_THROW(sol.F(Complex(1.0, 0.0)), EvaluationOutsideDomain);
  EXPECT_THROW(sol.F(Complex(0.0, 1.0 - 1e-7)), EvaluationOutsideDomain);
  EXPECT_NO_THROW(sol.F(Complex(0.0, 1.0 - 1e-5)));
}

TEST(SchwarzDisk, GaugeAndRandomTrigData) {
  Random r(41);
  const auto s = circle_spec(256);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = bimon::testing::TrigPoly::random(r, 8);
    const auto sol = schwarz_disk(p.data(), s);
    EXPECT_NEAR(sol.F(0.0).imag(), 0.0, 1e-15);
    for (int k = 0; k < 10; ++k) {
      const Complex z = complex_shadow(r.disk_point(0.9));
      EXPECT_LE(std::abs(sol.F(z) - p.schwarz(z)), 1e-11);
    }
  }
}

TEST(SchwarzDisk, NearBoundaryAccuracy) {
  Random r(42);
  const auto p = bimon::testing::TrigPoly::random(r, 6);
  const auto sol = schwarz_disk(p.data(), circle_spec(2048));
  for (double d : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const Complex z = std::polar(1.0 - d, 0.7);
    EXPECT_LE(std::abs(sol.F(z) - p.schwarz(z)), 1e-6) << d;
  }
}

TEST(SchwarzDisk, BoundaryRecoveryShrinksWithApproachDistance) {
  // the exact extension lags the data by about delta * sum k |c_k|, so the data keep that sum below 1
  bimon::testing::TrigPoly p{{0.2, 0.3, -0.1}, {0.0, 0.15, 0.1}};
  const auto sol = schwarz_disk(p.data(), circle_spec(4096));
  double previous = INFINITY;
  for (double d : {1e-1, 1e-2, 1e-3}) {
    double sup = 0.0;
    for (int k = 0; k < 128; ++k) {
      const double th = 2 * pi * k / 128;
      const Complex z = std::polar(1.0 - d, th);
      sup = std::max(sup, std::abs(sol.F(z).real() - p(th)));
      EXPECT_LE(std::abs(sol.F(z) - p.schwarz(z)), 1e-8);
    }
    EXPECT_LT(sup, previous);
    previous = sup;
  }
  EXPECT_LE(previous, 1e-3);
}

TEST(SchwarzDisk, ConjugateFunctions) {
  const auto s = circle_spec(256);
  const auto c1 = conjugate_boundary_disk(circ("cos(theta)"), s);
  const auto c0 = conjugate_boundary_disk(circ("1"), s);
  const auto c2 = conjugate_boundary_disk(circ("cos(2*theta) + cos(theta)"), s);
  for (int k = 0; k < 64; ++k) {
    const double th = 2 * pi * (k + 0.3) / 64;
    EXPECT_NEAR(c1(th), std::sin(th), 1e-12);
    EXPECT_NEAR(c0(th), 0.0, 1e-12);
    EXPECT_NEAR(c2(th), std::sin(2 * th) + std::sin(th), 1e-12);
  }
}

TEST(SchwarzDisk, DerivativeTrace) {
  const auto tr = disk_derivative_trace(circ("cos(2*theta)"), circle_spec(256));
  EXPECT_LE(std::abs(tr(0.9) - 2.0 * std::polar(1.0, 0.9)), 1e-12);
  // |sin| has a kink: its differentiated series does not settle
  EXPECT_THROW(disk_derivative_trace(circ("abs(sin(theta))"), circle_spec(256)), TraceUnavailable);
}

TEST(SchwarzHalfPlane, ReproducesKnownSolutions) {
  const auto s = realline_spec(2048);
  EXPECT_LE(std::abs(schwarz_halfplane(line("2.5"), s).F(Complex(0.3, 0.4)) - 2.5), 1e-12);
  const auto f3 = schwarz_halfplane(line("3*t/(t^2+1)"), s);
  EXPECT_NEAR(f3.F(I).real(), (3.0 / (2.0 * I)).real(), 1e-8);
  const auto fb = schwarz_halfplane(line("1/(1+t^2)"), s);
  EXPECT_LE(std::abs(fb.F(0.5 * I) - 2.0 / 3.0), 1e-9);
  EXPECT_NEAR(fb.F(I).imag(), 0.0, 1e-14);
  EXPECT_THROW(fb.F(Complex(1.0, 0.0)), EvaluationOutsideDomain);
  EXPECT_THROW(schwarz_halfplane(line("atan(t)"), s), NoFiniteLimit);
}

TEST(SchwarzHalfPlane, RandomRationalData) {
  Random r(44);
  const auto s = realline_spec(2048);
  for (int trial = 0; trial < 5; ++trial) {
    const auto d = bimon::testing::RationalData::random(r, 3);
    const auto sol = schwarz_halfplane(d.data(), s);
    for (int k = 0; k < 10; ++k) {
      const Complex z = complex_shadow(r.halfplane_point(0.05));
      EXPECT_LE(std::abs(sol.F(z) - d.schwarz(z)), 1e-9) << z;
    }
    // boundary value and limit at infinity
    for (double xi : {-2.0, 0.0, 0.8}) EXPECT_LE(std::abs(sol.boundary_value(xi) - d.schwarz(xi)), 1e-8) << xi;
    EXPECT_LE(std::abs(*sol.at_infinity - d.schwarz(Complex(0.0, 1e9))), 1e-8);
  }
}

TEST(SchwarzHalfPlane, DerivativeKernel) {
  const auto sol = schwarz_halfplane(line("1/(1+t^2)"), realline_spec(2048));
  const Complex z(0.4, 0.3);
  // F = i/(z + i)
  EXPECT_LE(std::abs(sol.F.derivative(z) - (-I / ((z + I) * (z + I)))), 1e-9);
  std::vector<Complex> pts = {Complex(0.0, 0.5), Complex(1.0, 0.2), Complex(-2.0, 1.0)};
  EXPECT_LE(fd_derivative_check(sol.F, pts), 1e-5);
}

TEST(SchwarzPipelinePieces, SolveF) {
  const auto s = circle_spec(256);
  const Complex z(0.2, -0.5);
  EXPECT_LE(std::abs(solve_F(circ("cos(theta)"), circ("cos(theta)"), DomainTag::unit_disk, s).F(z)), 1e-13);
  EXPECT_LE(std::abs(solve_F(circ("cos(theta)"), circ("0"), DomainTag::unit_disk, s).F(z) - z), 1e-12);
  EXPECT_LE(std::abs(solve_F(circ("0"), circ("cos(theta)"), DomainTag::unit_disk, s).F(z) + z), 1e-12);
}

TEST(SchwarzPipelinePieces, SolveF0) {
  const auto s = circle_spec(256);
  const Complex z(0.2, 0.5);
  // F = z^2, F0 = 0 manufactured traces
  const auto f0 = solve_F0(circ("2*sin(theta)^2"), [](double th) { return 2.0 * std::polar(1.0, th); },
                           DomainTag::unit_disk, s);
  EXPECT_LE(std::abs(f0.F(z)), 1e-12);
  const auto fc = solve_F0(circ("3"), [](double) { return Complex(0.0); }, DomainTag::unit_disk, s);
  EXPECT_LE(std::abs(fc.F(z) - 1.5), 1e-12);
  const auto fh = solve_F0(line("2/(1+t^2)"), nullptr, DomainTag::upper_half_plane, realline_spec(1024));
  EXPECT_LE(std::abs(fh.F(0.5 * I) - 2.0 / 3.0), 1e-9);
  EXPECT_THROW(solve_F0(circ("1"), nullptr, DomainTag::unit_disk, s), TraceUnavailable);
}

TEST(SchwarzProperties, LinearityOfSolveF) {
  Random r(45);
  const auto s = circle_spec(256);
  const auto p = bimon::testing::TrigPoly::random(r, 6), q = bimon::testing::TrigPoly::random(r, 6);
  const auto a = solve_F(p.data(), q.data(), DomainTag::unit_disk, s);
  const auto b = solve_F(q.data(), p.data(), DomainTag::unit_disk, s);
  const auto zero = solve_F(combine(1.0, p.data(), 1.0, q.data()), combine(1.0, q.data(), 1.0, p.data()),
                            DomainTag::unit_disk, s);
  for (int k = 0; k < 20; ++k) {
    const Complex z = complex_shadow(r.disk_point(0.9));
    EXPECT_LE(std::abs(a.F(z) + b.F(z)), 1e-10);
    EXPECT_LE(std::abs(zero.F(z)), 1e-10);
  }
}
