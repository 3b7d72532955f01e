#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "jratio/complex_geometry.hpp"
#include "test_support.hpp"

namespace jratio {
namespace {

using test::RandomPoints;

// Expected decimals come from tests/oracles/derive_expected.py (mpmath, 50 digits).
constexpr double kImageOfHalf = 0.84615384615384615385;       // h_{0.6}(0.5) = 11/13
constexpr double kChordalHalves = 0.7032967032967032967;      // |h(0.5) - h(-0.5)|
constexpr double kToPunctureHalf = 0.24615384615384615385;    // |h(0.5) - 0.6|
constexpr double kDerivativeHalf = 0.37869822485207100592;    // |h'(0.5)|
constexpr double kSquaredImageHalf = 0.71597633136094674556;  // h(0.5)^2

TEST(MobiusApply, IdentityMapLeavesPointsFixed) {
  const DiskAutomorphism identity(ComplexPoint{0.0, 0.0});
  EXPECT_EQ(mobius_apply(identity, {0.3, 0.4}), ComplexPoint(0.3, 0.4));
}

TEST(MobiusApply, NormalizationPoints) {
  const DiskAutomorphism h(ComplexPoint{0.6, 0.0});
  EXPECT_EQ(mobius_apply(h, {-0.6, 0.0}), ComplexPoint(0.0, 0.0));
  EXPECT_EQ(mobius_apply(h, {0.0, 0.0}), ComplexPoint(0.6, 0.0));

  const ComplexPoint a{0.2, -0.7};
  const DiskAutomorphism g(a);
  EXPECT_EQ(mobius_apply(g, {0.0, 0.0}), a);
  EXPECT_LT(std::abs(mobius_apply(g, -a)), 1e-16);
}

TEST(MobiusApply, HandEvaluation) {
  const ComplexPoint image = mobius_apply(DiskAutomorphism(ComplexPoint{0.6, 0.0}), {0.5, 0.0});
  EXPECT_NEAR(image.real(), kImageOfHalf, 1e-15);
  EXPECT_EQ(image.imag(), 0.0);
}

TEST(MobiusApply, RotationPrefactor) {
  const DiskAutomorphism plain(ComplexPoint{0.3, 0.1});
  const DiskAutomorphism rotated(ComplexPoint{0.3, 0.1}, std::numbers::pi / 2);
  const ComplexPoint z{0.2, -0.4};
  const ComplexPoint expected = ComplexPoint(0.0, 1.0) * mobius_apply(plain, z);
  EXPECT_LT(std::abs(mobius_apply(rotated, z) - expected), 1e-15);
}

TEST(MobiusApply, PhaseIsReducedToOneTurn) {
  EXPECT_EQ(DiskAutomorphism(ComplexPoint{0.1, 0.0}, 2 * std::numbers::pi).phase(), 0.0);
  EXPECT_NEAR(DiskAutomorphism(ComplexPoint{0.1, 0.0}, -std::numbers::pi / 2).phase(), 1.5 * std::numbers::pi, 1e-15);
}

TEST(MobiusApply, RejectsPointsOutsideTheDisk) {
  const DiskAutomorphism h(ComplexPoint{0.6, 0.0});
  EXPECT_THROW(mobius_apply(h, {1.0, 0.0}), std::domain_error);
  EXPECT_THROW(mobius_apply(h, {0.8, 0.7}), std::domain_error);
  EXPECT_THROW(mobius_apply(h, {NAN, 0.0}), std::domain_error);
}

TEST(DiskAutomorphism, RejectsParameterOnOrOutsideTheCircle) {
  EXPECT_THROW(DiskAutomorphism(ComplexPoint{1.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(DiskAutomorphism(ComplexPoint{0.0, -1.2}), std::invalid_argument);
  EXPECT_THROW(DiskAutomorphism(ComplexPoint{0.1, 0.0}, INFINITY), std::invalid_argument);
}

TEST(MobiusApply, MapsDiskIntoDisk) {
  RandomPoints rng(11);
  for (int i = 0; i < 100000; ++i) {
    const DiskAutomorphism h(rng.in_disk(0.999), rng.uniform(0.0, 7.0));
    ASSERT_LT(std::abs(mobius_apply(h, rng.in_disk(1.0))), 1.0);
  }
}

TEST(ChordalImageDistance, Examples) {
  const DiskAutomorphism identity;
  EXPECT_DOUBLE_EQ(chordal_image_distance(identity, {0.1, 0.2}, {-0.3, 0.5}), std::abs(ComplexPoint(0.4, -0.3)));
  EXPECT_EQ(chordal_image_distance(DiskAutomorphism(ComplexPoint{0.6, 0.0}), {0.3, 0.3}, {0.3, 0.3}), 0.0);
  EXPECT_NEAR(chordal_image_distance(DiskAutomorphism(ComplexPoint{0.6, 0.0}), {0.5, 0.0}, {-0.5, 0.0}), kChordalHalves, 1e-15);
}

// Direct |h(z) - h(w)| in extended precision. In binary64 the subtraction of
// two images close to the circle loses more than 1e-13 relative when |a| -> 1.
long double extended_image_distance(const DiskAutomorphism& h, ComplexPoint z, ComplexPoint w) {
  using Wide = std::complex<long double>;
  const Wide a(h.a().real(), h.a().imag());
  const Wide rotation = std::polar(1.0L, static_cast<long double>(h.phase()));
  auto image = [&](ComplexPoint p) {
    const Wide x(p.real(), p.imag());
    return rotation * (x + a) / (1.0L + std::conj(a) * x);
  };
  return std::abs(image(z) - image(w));
}

TEST(ChordalImageDistance, AgreesWithDirectImageDistance) {
  RandomPoints rng(12);
  for (int i = 0; i < 100000; ++i) {
    const DiskAutomorphism h(rng.in_disk(0.99), rng.uniform(0.0, 6.0));
    const ComplexPoint z = rng.in_disk(0.99);
    const ComplexPoint w = rng.in_disk(0.99);
    const double direct = static_cast<double>(extended_image_distance(h, z, w));
    const double closed = chordal_image_distance(h, z, w);
    ASSERT_LE(std::abs(direct - closed), 1e-13 * closed) << "z=" << z << " w=" << w << " a=" << h.a();
  }
}

TEST(ChordalImageDistance, RotationEquivariance) {
  RandomPoints rng(13);
  for (int i = 0; i < 100000; ++i) {
    const ComplexPoint a = rng.in_disk(0.95);
    const ComplexPoint z = rng.in_disk(0.99);
    const ComplexPoint w = rng.in_disk(0.99);
    const ComplexPoint rho = std::polar(1.0, rng.uniform(0.0, 2 * std::numbers::pi));
    const DiskAutomorphism h(a);
    const DiskAutomorphism rotated(a * rho);
    const double before = std::abs(mobius_apply(h, z) - mobius_apply(h, w));
    const double after = std::abs(mobius_apply(rotated, rho * z) - mobius_apply(rotated, rho * w));
    ASSERT_NEAR(before, after, 1e-13);
  }
}

TEST(DistToImagePuncture, Examples) {
  const DiskAutomorphism h(ComplexPoint{0.6, 0.0});
  EXPECT_EQ(dist_to_image_puncture(h, {0.0, 0.0}), 0.0);
  EXPECT_DOUBLE_EQ(dist_to_image_puncture(DiskAutomorphism(), {0.3, -0.4}), 0.5);
  EXPECT_NEAR(dist_to_image_puncture(h, {0.5, 0.0}), kToPunctureHalf, 1e-15);
}

TEST(DistToImagePuncture, MatchesDirectDistanceAndNeedsNormalizedMap) {
  RandomPoints rng(14);
  for (int i = 0; i < 10000; ++i) {
    const DiskAutomorphism h(rng.in_disk(0.95));
    const ComplexPoint z = rng.in_disk(0.99);
    ASSERT_NEAR(dist_to_image_puncture(h, z), std::abs(mobius_apply(h, z) - h.a()), 1e-14);
  }
  EXPECT_THROW(dist_to_image_puncture(DiskAutomorphism(ComplexPoint{0.6, 0.0}, 1.0), {0.5, 0.0}), std::invalid_argument);
}

TEST(ImageBoundaryDistance, AccurateNearTheCircle) {
  const DiskAutomorphism h(ComplexPoint{0.6, 0.0});
  EXPECT_NEAR(image_boundary_distance(h, {0.5, 0.0}), 2.0 / 13.0, 1e-16);
  // z = 1 - 1e-12 on the real axis: h(z) = 1 - 0.25e-12 to first order.
  const double d = image_boundary_distance(h, {1.0 - 1e-12, 0.0});
  EXPECT_NEAR(d / 0.25e-12, 1.0, 1e-4);
}

TEST(DiskIdentityResidual, VanishesUpToRoundoff) {
  EXPECT_EQ(disk_identity_residual({0.0, 0.0}, {0.0, 0.0}), 0.0);
  EXPECT_LE(std::abs(disk_identity_residual({0.6, 0.0}, {0.5, 0.0})), 1e-15);
  RandomPoints rng(15);
  for (int i = 0; i < 100000; ++i) {
    ASSERT_LE(std::abs(disk_identity_residual(rng.in_disk(1.0), rng.in_disk(1.0))), 1e-13);
  }
}

TEST(DerivativeModulus, Examples) {
  EXPECT_EQ(derivative_modulus(DiskAutomorphism(), {0.4, 0.1}), 1.0);
  EXPECT_NEAR(derivative_modulus(DiskAutomorphism(ComplexPoint{0.6, 0.0}), {0.5, 0.0}), kDerivativeHalf, 1e-15);
}

TEST(DerivativeModulus, FiniteDifferenceOracle) {
  RandomPoints rng(16);
  for (int i = 0; i < 1000; ++i) {
    const DiskAutomorphism h(rng.in_disk(0.9));
    const ComplexPoint z = rng.in_disk(0.9);
    const ComplexPoint w = z + std::polar(1e-6, rng.uniform(0.0, 6.28));
    const double difference_quotient = std::abs(mobius_apply(h, z) - mobius_apply(h, w)) / std::abs(z - w);
    const double exact = derivative_modulus(h, z);
    ASSERT_LE(std::abs(difference_quotient - exact), 1e-5 * exact);
  }
}

TEST(PowerMap, Examples) {
  const DiskAutomorphism h(ComplexPoint{0.6, 0.0});
  const ComplexPoint z{0.3, -0.2};
  EXPECT_EQ(power_map(h, 1, z), mobius_apply(h, z));
  EXPECT_EQ(power_map(DiskAutomorphism(), 2, {0.5, 0.0}), ComplexPoint(0.25, 0.0));
  EXPECT_NEAR(power_map(h, 2, {0.5, 0.0}).real(), kSquaredImageHalf, 1e-15);
  EXPECT_THROW(power_map(h, 0, z), std::invalid_argument);
}

TEST(PowerMap, IntegerPowerMatchesRepeatedProduct) {
  const ComplexPoint u{0.7, -0.45};
  ComplexPoint product{1.0, 0.0};
  for (unsigned m = 1; m <= 40; ++m) {
    product *= u;
    ASSERT_LT(std::abs(int_pow(u, m) - product), 1e-15) << m;
  }
  EXPECT_EQ(int_pow(u, 0), ComplexPoint(1.0, 0.0));
}

}  // namespace
}  // namespace jratio
