#include "support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace bimon;
using bimon::testing::Random;

namespace {

const Complex I(0.0, 1.0);

double dist(const BiNumber& a, const BiNumber& b) { return norm(a - b); }

double rel(const BiNumber& a, const BiNumber& b) { return norm(a - b) / std::max(1.0, std::max(norm(a), norm(b))); }

} // namespace

TEST(Algebra, AdditionIsComponentwise) {
  EXPECT_EQ(BiNumber(1.0, 0.0) + BiNumber(0.0, 1.0), BiNumber(1.0, 1.0));
  const BiNumber a(Complex(2, -1), Complex(0.5, 3));
  EXPECT_EQ(a + BiNumber(), a);
  EXPECT_EQ(BiNumber(2.0, 2.0 * I) + BiNumber(-2.0, -2.0 * I), BiNumber());
}

TEST(Algebra, MultiplicationTable) {
  EXPECT_EQ(BiNumber::e2() * BiNumber::e2(), BiNumber(1.0, 2.0 * I));
  EXPECT_EQ(BiNumber::rho() * BiNumber::rho(), BiNumber());
  const BiNumber s = BiNumber::e1() * BiNumber::e1() + BiNumber::e2() * BiNumber::e2();
  EXPECT_EQ(s, BiNumber::rho());
  EXPECT_NE(s, BiNumber());
  EXPECT_LE(norm(s * s), 1e-14);
  EXPECT_EQ(BiNumber::e1() * BiNumber::e2(), BiNumber::e2());
}

TEST(Algebra, NilpotentCoordinates) {
  auto c = to_nilpotent(BiNumber::rho());
  EXPECT_EQ(c.first, Complex(0.0));
  EXPECT_EQ(c.second, Complex(1.0));
  c = to_nilpotent(BiNumber::e1());
  EXPECT_EQ(c.first, Complex(1.0));
  EXPECT_EQ(c.second, Complex(0.0));
  c = to_nilpotent(embed({0.7, -1.3}));
  EXPECT_NEAR(std::abs(c.first - Complex(0.7, -1.3)), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(c.second - (-I * -1.3 / 2.0)), 0.0, 1e-16);
}

TEST(Algebra, Inverse) {
  EXPECT_EQ(inv(BiNumber::e1()), BiNumber::e1());
  EXPECT_THROW(inv(BiNumber::rho()), NonInvertible);
  EXPECT_LE(dist(inv(BiNumber::e2()), BiNumber(-2.0 * I, 1.0)), 1e-15);
  EXPECT_FALSE(is_invertible(3.0 * BiNumber::rho()));
  EXPECT_THROW(BiNumber::e1() / BiNumber::rho(), NonInvertible);
}

TEST(Algebra, FunctionalF) {
  EXPECT_EQ(functional_f(BiNumber::rho()), Complex(0.0));
  EXPECT_EQ(functional_f(BiNumber::e1()), Complex(1.0));
  EXPECT_EQ(functional_f(BiNumber::e2()), I);
  EXPECT_EQ(functional_f(embed({2.0, -5.0})), Complex(2.0, -5.0));
}

TEST(Algebra, Norm) {
  EXPECT_DOUBLE_EQ(norm(BiNumber::e1()), 1.0);
  EXPECT_DOUBLE_EQ(norm(BiNumber::rho()), 2.0 * std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(norm(BiNumber()), 0.0);
}

TEST(Algebra, Rendering) {
  EXPECT_EQ(to_string(BiNumber(Complex(1, 2), Complex(3, -4))), "(1+2i) e1 + (3-4i) e2");
  std::ostringstream os;
  os << BiNumber::e1();
  EXPECT_EQ(os.str(), "(1+0i) e1 + (0+0i) e2");
}

TEST(AlgebraProperties, RingAxiomsOnRandomTriples) {
  Random r(1);
  for (int k = 0; k < 1000; ++k) {
    const BiNumber a = r.binumber(2.0), b = r.binumber(2.0), c = r.binumber(2.0);
    EXPECT_LE(rel(a * b, b * a), 1e-12);
    EXPECT_LE(rel((a * b) * c, a * (b * c)), 1e-12);
    EXPECT_LE(rel(a * (b + c), a * b + a * c), 1e-12);
    EXPECT_LE(rel(a + b, b + a), 1e-15);
    EXPECT_LE(rel((a + b) + c, a + (b + c)), 1e-15);
  }
}

TEST(AlgebraProperties, InverseTimesSelfIsUnit) {
  Random r(2);
  for (int k = 0; k < 1000; ++k) {
    const BiNumber a = r.binumber(2.0);
    EXPECT_LE(dist(a * inv(a), BiNumber::e1()), 1e-12) << to_string(a);
  }
}

TEST(AlgebraProperties, NilpotentRoundTripAndCrossProduct) {
  Random r(3);
  for (int k = 0; k < 1000; ++k) {
    const BiNumber a = r.binumber(3.0), b = r.binumber(3.0);
    EXPECT_LE(dist(from_nilpotent(to_nilpotent(a)), a), 1e-15 * (1.0 + norm(a)));
    EXPECT_LE(rel(a * b, mul_nilpotent(a, b)), 1e-13);
  }
}

TEST(AlgebraProperties, FunctionalIsLinearAndMultiplicative) {
  Random r(4);
  for (int k = 0; k < 1000; ++k) {
    const BiNumber a = r.binumber(2.0), b = r.binumber(2.0);
    const Complex s = r.complex();
    EXPECT_LE(std::abs(functional_f(a * b) - functional_f(a) * functional_f(b)), 1e-12);
    EXPECT_LE(std::abs(functional_f(a + s * b) - (functional_f(a) + s * functional_f(b))), 1e-12);
  }
}

TEST(AlgebraProperties, TriangleInequality) {
  Random r(5);
  for (int k = 0; k < 1000; ++k) {
    const BiNumber a = r.binumber(), b = r.binumber();
    EXPECT_LE(norm(a + b), norm(a) + norm(b) + 1e-15);
  }
}
