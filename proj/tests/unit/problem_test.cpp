#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "ndsl/errors.hpp"
#include "ndsl/problem.hpp"
#include "ndsl/problem_io.hpp"

using namespace ndsl;

TEST(Coefficient, HalfOpenPieces) {
  const auto A = fixture("exampleA");
  EXPECT_EQ(A.r()(0.5), 1.0);
  EXPECT_EQ(A.r()(1.5), -1.0);
  EXPECT_EQ(A.r()(1.0), -1.0);
  EXPECT_EQ(A.r()(2.0), -1.0);
  EXPECT_EQ(A.r()(0.0), 1.0);
  EXPECT_THROW(A.r()(2.5), DomainError);
}

TEST(Coefficient, RejectsUnorderedBreakpoints) {
  EXPECT_THROW(PiecewiseCoefficient(0.0, {{1.0, Expression::number(1)}, {0.5, Expression::number(2)}}),
               ValidationError);
}

TEST(Coefficient, SamePieceSameExpression) {
  const auto A = fixture("exampleA");
  EXPECT_EQ(A.r().piece_index(0.1), A.r().piece_index(0.9));
  EXPECT_NE(A.r().piece_index(0.9), A.r().piece_index(1.1));
}

TEST(Weights, ExampleAIntegrals) {
  const auto A = fixture("exampleA");
  EXPECT_NEAR(sqrt_weight_integral(A, Side::Positive), 1.0, 1e-12);
  EXPECT_NEAR(sqrt_weight_integral(A, Side::Negative), 1.0, 1e-12);
  EXPECT_NEAR(abs_weight_integral(A), 2.0, 1e-12);
}

TEST(Weights, TrivialIntegral) {
  EXPECT_NEAR(sqrt_weight_integral(fixture("trivial"), Side::Positive), std::numbers::pi, 1e-12);
}

TEST(Weights, PiecewiseConstantQuadratureIsExact) {
  const SLProblem P(0.0, 3.0, PiecewiseCoefficient::constant(0.0, 3.0, 1.0), PiecewiseCoefficient::constant(0.0, 3.0, 0.0),
                    PiecewiseCoefficient(0.0, {{0.7, Expression::number(2.5)},
                                               {1.9, Expression::number(-4.0)},
                                               {3.0, Expression::number(0.25)}}));
  const double exact = 0.7 * 2.5 + 1.2 * 4.0 + 1.1 * 0.25;
  EXPECT_NEAR(abs_weight_integral(P), exact, 1e-12 * exact);
}

TEST(Weights, SmoothIntegrand) {
  const auto P = parse_problem(R"js({"interval":[0,1],"p":[{"to":1,"expr":"1"}],"q":[{"to":1,"expr":"0"}],
                                   "r":[{"to":1,"expr":"x^2"}]})js");
  EXPECT_NEAR(abs_weight_integral(P), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(sqrt_weight_integral(P, Side::Positive), 0.5, 1e-12);
}

TEST(Validate, ExampleAProfile) {
  const auto rep = validate_problem(fixture("exampleA"));
  EXPECT_TRUE(rep.valid);
  ASSERT_EQ(rep.r_profile.size(), 2u);
  EXPECT_EQ(rep.r_profile[0].sign, Sign::Positive);
  EXPECT_EQ(rep.r_profile[0].hi, 1.0);
  EXPECT_EQ(rep.r_profile[1].sign, Sign::Negative);
  EXPECT_EQ(sign_changes(fixture("exampleA").r()), 1);
}

TEST(Validate, ZeroWeight) {
  const auto rep = validate_problem(constant_problem(0, 1, 1, 0, 0));
  EXPECT_FALSE(rep.valid);
  ASSERT_FALSE(rep.errors.empty());
  EXPECT_NE(rep.errors.front().find("weight integrally zero"), std::string::npos);
}

TEST(Validate, NegativeLeadingCoefficient) {
  const auto P = parse_problem(R"js({"interval":[0,2],"p":[{"to":1,"expr":"1"},{"to":2,"expr":"-1"}],
                                   "q":[{"to":2,"expr":"0"}],"r":[{"to":2,"expr":"1"}]})js");
  const auto rep = validate_problem(P);
  EXPECT_FALSE(rep.valid);
  ASSERT_FALSE(rep.errors.empty());
  EXPECT_NE(rep.errors.front().find("p not positive at x=1"), std::string::npos) << rep.errors.front();
  EXPECT_THROW(require_valid(P), ValidationError);
}

TEST(Validate, AngleRange) {
  EXPECT_FALSE(validate_problem(constant_problem(0, 1, 1, 0, 1, 4.0, 0.0)).valid);
  EXPECT_TRUE(validate_problem(constant_problem(0, 1, 1, 0, 1, 1.0, 3.0)).valid);
}

TEST(ProblemIo, DefaultsAndRoundTrip) {
  const auto A = fixture("exampleA");
  EXPECT_EQ(A.alpha(), 0.0);
  EXPECT_EQ(A.beta(), 0.0);
  EXPECT_EQ(A.segments().size(), 2u);
  const auto B = parse_problem(problem_to_json(A));
  EXPECT_EQ(B.a(), A.a());
  EXPECT_EQ(B.b(), A.b());
  EXPECT_EQ(B.q()(0.3), A.q()(0.3));
  EXPECT_EQ(B.r()(1.3), A.r()(1.3));
}

TEST(ProblemIo, SchemaErrors) {
  EXPECT_THROW(parse_problem("[1,2]"), ValidationError);
  EXPECT_THROW(parse_problem(R"js({"interval":[0,1]})js"), ValidationError);
  EXPECT_THROW(parse_problem("{"), ValidationError);
  EXPECT_THROW(parse_problem(R"js({"interval":[0,1],"p":[{"to":1,"expr":"1+"}],"q":[{"to":1,"expr":"0"}],
                                 "r":[{"to":1,"expr":"1"}]})js"),
               ParseError);
  EXPECT_THROW(parse_problem(R"js({"interval":[0,1],"p":[{"to":0.5,"expr":"1"}],"q":[{"to":1,"expr":"0"}],
                                 "r":[{"to":1,"expr":"1"}]})js"),
               ValidationError);
}
