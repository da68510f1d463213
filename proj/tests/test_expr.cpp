#include "support.hpp"

#include <gtest/gtest.h>

using namespace bimon;
using bimon::testing::Random;

TEST(Expr, ParsesCallOfVariable) {
  const auto e = BoundaryExpr::parse("cos(theta)", Variable::theta);
  ASSERT_EQ(e.root().kind, ExprNode::Kind::call);
  EXPECT_EQ(e.root().func, Func::cos);
  ASSERT_EQ(e.root().args.size(), 1u);
  EXPECT_EQ(e.root().args[0].kind, ExprNode::Kind::variable);
}

TEST(Expr, Evaluates) {
  EXPECT_DOUBLE_EQ(BoundaryExpr::parse("3*t/(t^2+1)", Variable::t).eval(1.0), 1.5);
  EXPECT_DOUBLE_EQ(BoundaryExpr::parse("sin(theta)^2", Variable::theta).eval(std::numbers::pi / 2), 1.0);
  EXPECT_DOUBLE_EQ(BoundaryExpr::parse("1/(1+t^2)", Variable::t).eval(0.0), 1.0);
  EXPECT_DOUBLE_EQ(BoundaryExpr::parse("2^3^2", Variable::t).eval(0.0), 512.0);  // right-associative
  EXPECT_DOUBLE_EQ(BoundaryExpr::parse("2*pi - 1.5e1", Variable::t).eval(0.0), 2 * std::numbers::pi - 15.0);
  EXPECT_DOUBLE_EQ(BoundaryExpr::parse("abs(-t) + sqrt(4) + exp(0) + atan(0) + tan(0)", Variable::t).eval(-3.0), 6.0);
}

TEST(Expr, DomainErrorsAtEvaluation) {
  const auto e = BoundaryExpr::parse("log(t)", Variable::t);
  EXPECT_THROW(e.eval(-1.0), EvaluationError);
  EXPECT_THROW(BoundaryExpr::parse("1/t", Variable::t).eval(0.0), EvaluationError);
}

TEST(Expr, ParseErrorsCarryOffsets) {
  try {
    BoundaryExpr::parse("cos(t", Variable::t);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 5u);
    EXPECT_FALSE(e.expected().empty());
  }
  try {
    BoundaryExpr::parse("1 + * 2", Variable::t);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
  EXPECT_THROW(BoundaryExpr::parse("", Variable::t), ParseError);
  EXPECT_THROW(BoundaryExpr::parse("1 2", Variable::t), ParseError);
}

TEST(Expr, IdentifierErrors) {
  try {
    BoundaryExpr::parse("1 + foo(t)", Variable::t);
    FAIL();
  } catch (const UnknownIdentifier& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
  try {
    BoundaryExpr::parse("cos(t)", Variable::theta);
    FAIL();
  } catch (const WrongVariable& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
  EXPECT_THROW(BoundaryExpr::parse("theta", Variable::t), WrongVariable);
}

namespace {

// Random ASTs without negative literals (a leading '-' always parses as negation).
ExprNode random_node(Random& r, int depth) {
  ExprNode n;
  const int pick = depth <= 0 ? int(r.uniform(0.0, 3.0)) : int(r.uniform(0.0, 10.0));
  using K = ExprNode::Kind;
  switch (pick) {
  case 0: n.kind = K::number; n.value = std::abs(r.uniform(0.0, 100.0)) * std::pow(10.0, int(r.uniform(-8, 8))); break;
  case 1: n.kind = K::pi; break;
  case 2: n.kind = K::variable; break;
  case 3: n.kind = K::negate; n.args.push_back(random_node(r, depth - 1)); break;
  case 4: n.kind = K::call; n.func = function_names[std::size_t(r.uniform(0.0, 7.999))].second;
    n.args.push_back(random_node(r, depth - 1)); break;
  default: {
    const K ops[] = {K::add, K::subtract, K::multiply, K::divide, K::power};
    n.kind = ops[std::size_t(r.uniform(0.0, 4.999))];
    n.args.push_back(random_node(r, depth - 1));
    n.args.push_back(random_node(r, depth - 1));
  }
  }
  return n;
}

} // namespace

TEST(ExprProperties, RenderParseRoundTripOnFiftyExpressions) {
  const std::vector<std::string> fixed = {
      "cos(theta)", "sin(theta)^2", "2*sin(theta)^2", "1 - cos(2*theta)/3", "-sin(theta) + 0.25*cos(3*theta)",
      "exp(cos(theta))", "abs(sin(theta))^1.5", "theta - theta + pi", "sqrt(2 + cos(theta))", "(1)",
  };
  std::vector<BoundaryExpr> corpus;
  for (const auto& s : fixed) corpus.push_back(BoundaryExpr::parse(s, Variable::theta));
  Random r(21);
  std::vector<ExprNode> nodes;
  while (corpus.size() < 50) {
    const std::string text = detail::render_node(random_node(r, 4), Variable::theta);
    corpus.push_back(BoundaryExpr::parse(text, Variable::theta));
  }
  for (const auto& e : corpus) {
    const BoundaryExpr again = BoundaryExpr::parse(e.render(), Variable::theta);
    EXPECT_EQ(again, e) << e.render();
    EXPECT_EQ(again.render(), e.render());
  }
}
