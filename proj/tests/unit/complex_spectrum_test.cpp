#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "ndsl/complex_spectrum.hpp"
#include "ndsl/errors.hpp"
#include "ndsl/shooting.hpp"

using namespace ndsl;

TEST(ComplexSpectrum, ExampleAPair) {
  const auto cs = complex_spectrum(fixture("exampleA"), {-10.0, 10.0, -10.0, 10.0});
  ASSERT_EQ(cs.records.size(), 2u);
  EXPECT_EQ(cs.nonreal_count(), 2);
  for (const auto& r : cs.records) {
    EXPECT_LE(std::abs(r.lambda.real()), 1e-8);
    EXPECT_NEAR(std::abs(r.lambda.imag()), 4.36280170925174, 1e-9);
    EXPECT_EQ(r.cls, StateClass::complex_ghost_nondegenerate);
    EXPECT_LE(std::abs(r.krein), 1e-6);
  }
  EXPECT_EQ(cs.records[0].lambda, std::conj(cs.records[1].lambda));
  EXPECT_TRUE(cs.cross_check_ok);
  EXPECT_EQ(cs.cross_check, 2);
}

TEST(ComplexSpectrum, LeftDefiniteIsReal) {
  const auto cs = complex_spectrum(fixture("exampleA_q0"), {-20.0, 20.0, -20.0, 20.0});
  EXPECT_TRUE(cs.records.empty());
  EXPECT_TRUE(cs.cross_check_ok);
}

TEST(ComplexSpectrum, MirrorAndResidual) {
  const auto P = fixture("exampleA");
  const auto cs = complex_spectrum(P, {-20.0, 20.0, -20.0, 20.0});
  for (const auto& r : cs.records) {
    const CharValue cv = char_F(P, std::conj(r.lambda));
    EXPECT_LE(std::abs(cv.f), 1e-12 * (1.0 + cv.scale));
  }
}

TEST(ComplexSpectrum, UpperHalfPlaneBoxStillMirrors) {
  const auto cs = complex_spectrum(fixture("exampleA"), {-5.0, 5.0, 1.0, 6.0});
  ASSERT_EQ(cs.records.size(), 2u);
  EXPECT_EQ(cs.cross_check, -1);
}

TEST(ComplexSpectrum, LowerHalfPlaneBox) {
  const auto cs = complex_spectrum(fixture("exampleA"), {-5.0, 5.0, -6.0, -1.0});
  EXPECT_EQ(cs.records.size(), 2u);
}

TEST(ComplexSpectrum, StraddlingAsymmetricBoxRejected) {
  EXPECT_THROW(complex_spectrum(fixture("exampleA"), {-5.0, 5.0, -1.0, 6.0}), PreconditionError);
}

TEST(ComplexSpectrum, AuditCountsAreAdditive) {
  const auto cs = complex_spectrum(fixture("exampleA"), {-10.0, 10.0, -10.0, 10.0});
  ASSERT_FALSE(cs.audit.empty());
  EXPECT_EQ(cs.audit.front().count, 1);
  for (const auto& b : cs.audit) EXPECT_GE(b.count, 0);
}
