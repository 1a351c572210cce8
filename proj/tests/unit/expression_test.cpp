#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ndsl/errors.hpp"
#include "ndsl/expression.hpp"

using ndsl::Expression;

TEST(Expression, Literal) {
  const auto e = Expression::parse("1");
  ASSERT_TRUE(e.is_constant());
  EXPECT_EQ(*e.constant_value(), 1.0);
}

TEST(Expression, FoldsFunctionOfPi) {
  const auto e = Expression::parse("sin(pi/2)");
  ASSERT_TRUE(e.is_constant());
  EXPECT_DOUBLE_EQ(*e.constant_value(), 1.0);
}

TEST(Expression, ConstantPotential) {
  const auto e = Expression::parse("-9*pi^2/16");
  ASSERT_TRUE(e.is_constant());
  EXPECT_DOUBLE_EQ(*e.constant_value(), -9.0 * std::numbers::pi * std::numbers::pi / 16.0);
  EXPECT_NEAR(*e.constant_value(), -5.5516525, 1e-7);
}

TEST(Expression, DanglingOperatorOffset) {
  try {
    Expression::parse("2*");
    FAIL() << "expected ParseError";
  } catch (const ndsl::ParseError& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
}

TEST(Expression, UnknownIdentifier) {
  try {
    Expression::parse("1 + y");
    FAIL() << "expected ParseError";
  } catch (const ndsl::ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
}

TEST(Expression, Precedence) {
  EXPECT_DOUBLE_EQ(Expression::parse("2+3*4")(0.0), 14.0);
  EXPECT_DOUBLE_EQ(Expression::parse("2^3^2")(0.0), 512.0);
  EXPECT_DOUBLE_EQ(Expression::parse("-2^2")(0.0), -4.0);
  EXPECT_DOUBLE_EQ(Expression::parse("(1-x)*(1+x)")(0.5), 0.75);
}

TEST(Expression, VariableIsNotConstant) {
  const auto e = Expression::parse("x^2 + exp(0)");
  EXPECT_FALSE(e.is_constant());
  EXPECT_DOUBLE_EQ(e(3.0), 10.0);
}

TEST(Expression, DomainErrors) {
  EXPECT_THROW(Expression::parse("sqrt(x)")(-1.0), ndsl::DomainError);
  EXPECT_THROW(Expression::parse("1/x")(0.0), ndsl::DomainError);
  EXPECT_THROW(Expression::parse("exp(x)")(1000.0), ndsl::DomainError);
  EXPECT_THROW(Expression::parse("sqrt(-1)")(0.0), ndsl::DomainError);
}

TEST(Expression, FoldingMatchesEvaluation) {
  for (const char* s : {"cos(1)*abs(-3)", "exp(1/2)-sqrt(2)", "pi^pi", "1e-3*7"}) {
    const auto e = Expression::parse(s);
    ASSERT_TRUE(e.is_constant()) << s;
    for (double x : {-1.0, 0.0, 2.5}) EXPECT_EQ(*e.constant_value(), e(x)) << s;
  }
}

TEST(Expression, RoundTrip) {
  for (const char* s : {"-9*pi^2/16", "sin(x)^2 + cos(x)^2", "1/(1+x^2)", "-(x - 2)*abs(x)", "2^-x", "0.1+0.2"}) {
    const auto e = Expression::parse(s);
    const auto back = Expression::parse(e.to_string());
    EXPECT_TRUE(back == e) << s << " -> " << e.to_string();
    EXPECT_EQ(back.to_string(), e.to_string());
  }
}
