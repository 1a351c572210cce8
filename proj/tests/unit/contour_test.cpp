#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "ndsl/contour.hpp"
#include "ndsl/errors.hpp"

using namespace ndsl;

TEST(Winding, EnclosesSimpleEigenvalue) {
  EXPECT_EQ(winding_number(fixture("trivial"), {0.5, 1.5, -0.5, 0.5}).count, 1);
}

TEST(Winding, EmptyBox) {
  EXPECT_EQ(winding_number(fixture("trivial"), {2.0, 3.0, -0.5, 0.5}).count, 0);
}

TEST(Winding, ExampleAUpperPair) {
  const auto w = winding_number(fixture("exampleA"), {-1.0, 1.0, 3.0, 6.0});
  EXPECT_EQ(w.count, 1);
  EXPECT_LT(w.residual, 0.1);
}

TEST(Winding, InflatesWhenEdgeHitsEigenvalue) {
  // The left edge passes through lambda = 4.
  const auto w = winding_number(fixture("trivial"), {4.0, 10.0, -0.5, 0.5});
  EXPECT_GT(w.inflations, 0);
  EXPECT_EQ(w.count, 2);
}

TEST(Winding, ZeroOnContourAfterRetries) {
  WindingOptions opts;
  opts.max_inflations = 0;
  EXPECT_THROW(winding_number(fixture("trivial"), {4.0, 10.0, -0.5, 0.5}, opts), ZeroOnContourError);
}

TEST(Winding, BudgetExceeded) {
  WindingOptions opts;
  opts.budget = 50;
  EXPECT_THROW(winding_number(fixture("trivial"), {0.5, 1.5, -0.5, 0.5}, opts), NumericalError);
}

TEST(Winding, Additivity) {
  const auto A = fixture("exampleA");
  const ContourBox outer{-30.0, 30.0, -8.0, 8.0};
  const int total = winding_number(A, outer).count;
  int sum = 0;
  for (const ContourBox& b : {ContourBox{-30.0, 0.37, -8.0, 1.3}, ContourBox{0.37, 30.0, -8.0, 1.3},
                              ContourBox{-30.0, 0.37, 1.3, 8.0}, ContourBox{0.37, 30.0, 1.3, 8.0}})
    sum += winding_number(A, b).count;
  EXPECT_EQ(total, 4);
  EXPECT_EQ(sum, total);
}

TEST(Isolate, ExampleAUpperHalf) {
  const auto iso = isolate_zeros(fixture("exampleA"), {-10.0, 10.0, 0.01, 10.0}, Controls{});
  ASSERT_EQ(iso.terminal.size(), 1u);
  EXPECT_EQ(iso.terminal[0].count, 1);
  EXPECT_TRUE(iso.terminal[0].contains({0.0, 4.3628}));
  int sum = 0;
  for (const auto& t : iso.terminal) sum += t.count;
  EXPECT_EQ(sum, iso.outer_count);
}

TEST(Isolate, RightDefiniteHasNothingOffAxis) {
  EXPECT_TRUE(isolate_zeros(fixture("trivial"), {-10.0, 10.0, 0.01, 10.0}, Controls{}).terminal.empty());
}

TEST(Isolate, EmptyBox) {
  const auto iso = isolate_zeros(fixture("exampleA"), {20.0, 22.0, -1.0, 1.0}, Controls{});
  EXPECT_EQ(iso.outer_count, 0);
  EXPECT_TRUE(iso.terminal.empty());
}

TEST(Isolate, RealZerosSeparate) {
  const auto iso = isolate_zeros(fixture("trivial"), {0.3, 17.0, -1.0, 1.0}, Controls{});
  ASSERT_EQ(iso.terminal.size(), 4u);
  for (const auto& t : iso.terminal) EXPECT_EQ(t.count, 1);
}

TEST(Polish, ExampleAPair) {
  const auto p = polish(fixture("exampleA"), {0.0, 4.0}, {-1.0, 1.0, 3.0, 6.0}, 1, Controls{});
  EXPECT_LE(std::abs(p.lambda.real()), 1e-8);
  EXPECT_NEAR(p.lambda.imag(), 4.3, 0.1);
  EXPECT_NEAR(p.lambda.imag(), 4.36280170925174, 1e-9);
  EXPECT_EQ(p.multiplicity, 1);
}

TEST(Polish, TrivialEigenvalues) {
  const auto T = fixture("trivial");
  EXPECT_NEAR(polish(T, 0.9, {0.5, 1.5, -0.5, 0.5}, 1, Controls{}).lambda.real(), 1.0, 1e-10);
  EXPECT_NEAR(polish(T, 8.5, {8.0, 10.0, -0.5, 0.5}, 1, Controls{}).lambda.real(), 9.0, 1e-10);
}

TEST(Polish, LeavingTheBoxThrows) {
  EXPECT_THROW(polish(fixture("trivial"), 2.6, {2.55, 2.65, -0.05, 0.05}, 1, Controls{}), NumericalError);
}
