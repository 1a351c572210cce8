#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "ndsl/transfer.hpp"

using namespace ndsl;

namespace {

// Classical RK4 with a fixed tiny step, independent of the library integrator.
Mat2 rk4_transfer(double p, double q, double r, cplx lambda, double h, int steps) {
  Mat2 out;
  for (int col = 0; col < 2; ++col) {
    std::array<cplx, 2> y = col == 0 ? std::array<cplx, 2>{1.0, 0.0} : std::array<cplx, 2>{0.0, 1.0};
    auto f = [&](const std::array<cplx, 2>& w) { return std::array<cplx, 2>{w[1] / p, (q - lambda * r) * w[0]}; };
    const double dx = h / steps;
    for (int k = 0; k < steps; ++k) {
      auto k1 = f(y);
      auto k2 = f({y[0] + 0.5 * dx * k1[0], y[1] + 0.5 * dx * k1[1]});
      auto k3 = f({y[0] + 0.5 * dx * k2[0], y[1] + 0.5 * dx * k2[1]});
      auto k4 = f({y[0] + dx * k3[0], y[1] + dx * k3[1]});
      for (int i = 0; i < 2; ++i) y[i] += dx / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if (col == 0) {
      out.a = y[0];
      out.c = y[1];
    } else {
      out.b = y[0];
      out.d = y[1];
    }
  }
  return out;
}

void expect_near(const Mat2& m, const Mat2& e, double tol) {
  EXPECT_NEAR(std::abs(m.a - e.a), 0.0, tol);
  EXPECT_NEAR(std::abs(m.b - e.b), 0.0, tol);
  EXPECT_NEAR(std::abs(m.c - e.c), 0.0, tol);
  EXPECT_NEAR(std::abs(m.d - e.d), 0.0, tol);
}

}  // namespace

TEST(Transfer, FreeParticle) {
  expect_near(transfer_matrix_constant(1, 0, 1, 0.0, 1.0), {1.0, 1.0, 0.0, 1.0}, 1e-15);
}

TEST(Transfer, HalfPeriod) {
  expect_near(transfer_matrix_constant(1, -1, 1, 0.0, std::numbers::pi), {-1.0, 0.0, 0.0, -1.0}, 1e-15);
}

TEST(Transfer, MatchesRk4OnNegativeWeightPiece) {
  const cplx lambda(0.0, 4.3);
  const Mat2 m = transfer_matrix_constant(1.0, -5.5516525, -1.0, lambda, 0.5);
  expect_near(m, rk4_transfer(1.0, -5.5516525, -1.0, lambda, 0.5, 20000), 1e-9);
}

TEST(Transfer, SeriesBranchIsContinuous) {
  for (double z : {0.99e-4, 1.01e-4, -0.99e-4, -1.01e-4}) {
    const Mat2 m = transfer_matrix_constant(2.0, -z * 2.0, 0.0, 0.0, 1.0);
    const Mat2 e = rk4_transfer(2.0, -z * 2.0, 0.0, 0.0, 1.0, 2000);
    expect_near(m, e, 1e-13);
  }
}

TEST(Transfer, UnitDeterminant) {
  for (cplx l : {cplx(3.0, 0.0), cplx(-40.0, 2.0), cplx(0.0, 1e-9), cplx(250.0, -7.0)}) {
    const Mat2 m = transfer_matrix_constant(1.3, 0.4, -0.7, l, 0.8);
    EXPECT_NEAR(std::abs(m.det() - 1.0), 0.0, 1e-12 * (1.0 + std::norm(m.a) + std::norm(m.b)));
  }
}

TEST(Transfer, DerivativeMatchesDifferenceQuotient) {
  for (cplx l : {cplx(2.0, 0.5), cplx(-6.0, 0.0), cplx(1e-6, 0.0)}) {
    const auto t = transfer_with_derivative(1.5, -2.0, 0.8, l, 0.7);
    const double h = 1e-6;
    const Mat2 fp = transfer_matrix_constant(1.5, -2.0, 0.8, l + h, 0.7);
    const Mat2 fm = transfer_matrix_constant(1.5, -2.0, 0.8, l - h, 0.7);
    const Mat2 fd{(fp.a - fm.a) / (2 * h), (fp.b - fm.b) / (2 * h), (fp.c - fm.c) / (2 * h), (fp.d - fm.d) / (2 * h)};
    expect_near(t.dm, fd, 1e-7);
  }
}
