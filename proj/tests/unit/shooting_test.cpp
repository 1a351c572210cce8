#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "fixtures.hpp"
#include "ndsl/errors.hpp"
#include "ndsl/shooting.hpp"

using namespace ndsl;
constexpr double kPi = std::numbers::pi;

namespace {

// F for Example-type problems (p = 1, r = +1 on [0,1], -1 on (1,2], Dirichlet) in closed form.
cplx two_piece_F(cplx lambda, double q) {
  auto sinc = [](cplx z) { const cplx w = std::sqrt(z); return std::abs(z) < 1e-300 ? cplx(1.0) : std::sin(w) / w; };
  const cplx z1 = lambda - q, z2 = -lambda - q;
  return sinc(z1) * std::cos(std::sqrt(z2)) + std::cos(std::sqrt(z1)) * sinc(z2);
}

SLProblem smooth_problem() {
  return parse_problem(R"js({"interval":[0,1.5],"alpha":0.4,"beta":1.1,
    "p":[{"to":1.5,"expr":"1+x^2/4"}],
    "q":[{"to":0.6,"expr":"cos(3*x)"},{"to":1.5,"expr":"-2"}],
    "r":[{"to":0.6,"expr":"1+x"},{"to":1.5,"expr":"-exp(-x)"}]})js");
}

}  // namespace

TEST(Shooting, ClosedFormFinalState) {
  const auto r = integrate_ivp(fixture("trivial"), 2.25, false, false);
  EXPECT_NEAR(std::abs(r.end.u - (-2.0 / 3.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r.end.v), 0.0, 1e-12);
}

TEST(Shooting, InitialStateIsDirichlet) {
  const auto r = integrate_ivp(fixture("exampleA"), 3.0, false, true);
  EXPECT_EQ(r.mesh->u.front(), cplx(0.0));
  EXPECT_EQ(r.mesh->v.front(), cplx(1.0));
}

TEST(Shooting, TrivialCharacteristicFunction) {
  const auto P = fixture("trivial");
  for (cplx l : {cplx(2.25), cplx(-3.0), cplx(5.0, 2.0), cplx(0.0)}) {
    const cplx w = std::sqrt(l);
    const cplx exact = std::abs(l) == 0.0 ? cplx(kPi) : std::sin(w * kPi) / w;
    EXPECT_NEAR(std::abs(char_F(P, l).f - exact), 0.0, 1e-12 * (1.0 + std::abs(exact))) << l;
  }
}

TEST(Shooting, ExampleACharacteristicFunction) {
  const auto A = fixture("exampleA");
  const double q = -9.0 * kPi * kPi / 16.0;
  for (cplx l : {cplx(10.0), cplx(-7.5, 3.0), cplx(0.0, 4.3), cplx(120.0, -1.0)}) {
    const cplx exact = two_piece_F(l, q);
    EXPECT_NEAR(std::abs(char_F(A, l).f - exact), 0.0, 1e-11 * (1.0 + std::abs(exact))) << l;
  }
}

TEST(Shooting, ConjugateSymmetry) {
  const auto P = smooth_problem();
  for (cplx l : {cplx(3.0, 1.0), cplx(-20.0, 5.0)}) {
    const cplx f = char_F(P, l).f, g = char_F(P, std::conj(l)).f;
    EXPECT_NEAR(std::abs(g - std::conj(f)), 0.0, 1e-12 * (1.0 + std::abs(f)));
  }
}

TEST(Shooting, SmoothCoefficientsAgreeWithTightTolerance) {
  const auto P = smooth_problem();
  const cplx l(7.0, -2.0);
  const cplx coarse = char_F(P, l, false, {1e-10, 512}).f;
  const cplx fine = char_F(P, l, false, {1e-13, 512}).f;
  EXPECT_NEAR(std::abs(coarse - fine), 0.0, 1e-8 * (1.0 + std::abs(fine)));
}

TEST(Shooting, DerivativeMatchesDifferenceQuotient) {
  for (const auto& P : {fixture("exampleA"), smooth_problem()}) {
    for (cplx l : {cplx(4.0, 2.0), cplx(-9.0, -1.0)}) {
      const double h = 1e-5;
      const cplx fd = (char_F(P, l + h).f - char_F(P, l - h).f) / (2.0 * h);
      const cplx df = *char_F(P, l, true).df;
      EXPECT_LE(std::abs(df - fd) / (1.0 + std::abs(df)), 1e-6) << l;
    }
  }
}

TEST(Shooting, PropagatorHasUnitDeterminant) {
  const auto B = fixture("exampleB");
  EXPECT_LE(std::abs(propagator(B, cplx(5.0, 3.0), B.a(), B.b()).det() - 1.0), 1e-12);
  const auto S = smooth_problem();
  for (double tol : {1e-10, 1e-12}) {
    const Mat2 m = propagator(S, cplx(5.0, 3.0), S.a(), S.b(), ShootOptions{tol});
    EXPECT_LE(std::abs(m.det() - 1.0), 10.0 * tol) << tol;
  }
  const Mat2 tight = propagator(S, cplx(5.0, 3.0), 0.2, 1.3, ShootOptions{1e-12});
  EXPECT_LE(std::abs(tight.det() - 1.0), 1e-10);
}

TEST(Prufer, ClosedFormAngles) {
  const auto P = fixture("trivial");
  auto r = prufer_oscillation(P, 2.25);
  EXPECT_NEAR(r.theta_b, 1.5 * kPi, 1e-9);
  EXPECT_EQ(r.zero_count, 1);
  r = prufer_oscillation(P, 1.0);
  EXPECT_NEAR(r.theta_b, kPi, 1e-9);
  EXPECT_EQ(r.zero_count, 0);
  r = prufer_oscillation(P, 16.0);
  EXPECT_NEAR(r.theta_b, 4.0 * kPi, 1e-9);
  EXPECT_EQ(r.zero_count, 3);
}

TEST(Prufer, SmoothCoefficientsMatchConstantPath) {
  // Same constant problem written with an x-dependent expression that evaluates to a constant.
  const auto C = constant_problem(0, 2, 1, -3, 2);
  const auto S = parse_problem(R"js({"interval":[0,2],"p":[{"to":2,"expr":"1+0*x"}],"q":[{"to":2,"expr":"-3+0*x"}],
                                   "r":[{"to":2,"expr":"2+0*x"}]})js");
  for (double l : {-5.0, 0.3, 12.0, 80.0})
    EXPECT_NEAR(prufer_oscillation(C, l).theta_b, prufer_oscillation(S, l).theta_b, 1e-7) << l;
}

TEST(Prufer, RejectsComplexLambda) {
  EXPECT_THROW(prufer_oscillation(fixture("trivial"), cplx(1.0, 0.1)), PreconditionError);
}

TEST(Norms, SineKrein) {
  const auto ef = eigenfunction(fixture("trivial"), 1.0);
  EXPECT_NEAR(krein_norms(fixture("trivial"), ef).krein, kPi / 2, 1e-8);
  const auto neg = constant_problem(0, kPi, 1, 0, -1);
  EXPECT_NEAR(krein_norms(neg, ef).krein, -kPi / 2, 1e-8);
}

TEST(Norms, Forms) {
  const auto ef = eigenfunction(fixture("trivial"), 1.0);
  auto f = evaluate_forms(fixture("trivial"), ef);
  EXPECT_NEAR(f.L, kPi / 2, 1e-8);
  EXPECT_NEAR(f.R, kPi / 2, 1e-8);
  f = evaluate_forms(constant_problem(0, kPi, 1, -1, 1), ef);
  EXPECT_NEAR(f.L, 0.0, 1e-8);
  f = evaluate_forms(constant_problem(0, kPi, 1, 0, -1), ef);
  EXPECT_NEAR(f.R, -kPi / 2, 1e-8);
}

TEST(Eigenfunction, NormalizedAndMatchesSine) {
  const auto ef = eigenfunction(fixture("trivial"), 4.0);
  double top = 0.0;
  for (std::size_t j = 0; j < ef.x.size(); ++j) {
    top = std::max(top, std::abs(ef.u[j]));
    EXPECT_NEAR(std::abs(ef.u[j]), std::abs(std::sin(2.0 * ef.x[j])), 1e-9);
  }
  EXPECT_EQ(top, 1.0);
}

TEST(Eigenfunction, ExponentialRegionStaysAccurate) {
  // Large positive eigenvalue of Example A: the solution decays like exp(-sqrt(lambda) (x - 1))
  // on the negative-weight half, so the Krein norm must stay positive.
  const auto A = fixture("exampleA");
  const double q = -9.0 * kPi * kPi / 16.0;
  double lo = 1590.0, hi = 1600.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    if ((two_piece_F(lo, q).real() > 0) == (two_piece_F(mid, q).real() > 0)) lo = mid;
    else hi = mid;
  }
  const auto ef = eigenfunction(A, lo);
  EXPECT_GT(krein_norms(A, ef).krein, 0.4);
}
