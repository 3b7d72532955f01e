#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "jratio/constants.hpp"
#include "jratio/lipschitz_search.hpp"
#include "test_support.hpp"

namespace jratio {
namespace {

using test::RandomPoints;

SearchConfig quick_config() {
  SearchConfig cfg;
  cfg.grid_n = 32;
  cfg.refine_iters = 120;
  cfg.refine_starts = 8;
  cfg.seed = 5;
  return cfg;
}

TEST(RatioJ, SharpPairAttainsMainConstant) {
  EXPECT_NEAR(ratio_J({0.6, 0.0}, {0.5, 0.0}, {-0.5, 0.0}), 1.5634737703113704333, 1e-14);
  for (double t : {0.1, 0.3, 0.9}) {
    EXPECT_NEAR(ratio_J({t, 0.0}, {0.5, 0.0}, {-0.5, 0.0}), main_constant(t), 1e-13) << t;
  }
}

TEST(RatioJ, IdentityParameterGivesOne) {
  EXPECT_EQ(ratio_J({0.0, 0.0}, {0.3, 0.1}, {-0.2, 0.4}), 1.0);
}

TEST(RatioJ, ExactlySymmetric) {
  RandomPoints rng(31);
  for (int i = 0; i < 10000; ++i) {
    const ComplexPoint a = rng.in_disk(0.95);
    const ComplexPoint z = rng.in_annulus(1e-6, 1.0 - 1e-6);
    const ComplexPoint w = rng.in_annulus(1e-6, 1.0 - 1e-6);
    ASSERT_EQ(ratio_J(a, z, w), ratio_J(a, w, z));
  }
}

TEST(RatioJ, Errors) {
  EXPECT_THROW(ratio_J({0.6, 0.0}, {0.5, 0.0}, {0.5, 0.0}), std::invalid_argument);
  EXPECT_THROW(ratio_J({1.0, 0.0}, {0.5, 0.0}, {-0.5, 0.0}), std::invalid_argument);
  EXPECT_THROW(ratio_J({0.6, 0.0}, {0.0, 0.0}, {-0.5, 0.0}), std::domain_error);
  EXPECT_THROW(ratio_J({0.6, 0.0}, {0.5, 0.0}, {1.0, 0.0}), std::domain_error);
}

TEST(DiagonalLimit, Example) {
  EXPECT_NEAR(diagonal_limit({0.6, 0.0}, {0.5, 0.0}), 16.0 / 13.0, 1e-15);
}

TEST(DiagonalLimit, MatchesNearbyRatio) {
  const double near = ratio_J({0.6, 0.0}, {0.5, 0.0}, {0.5, 1e-9});
  EXPECT_NEAR(near, 16.0 / 13.0, 1e-6);

  RandomPoints rng(32);
  for (int i = 0; i < 1000; ++i) {
    const ComplexPoint a = rng.in_annulus(1e-3, 0.95);
    const ComplexPoint z = rng.in_annulus(0.05, 0.95);
    const ComplexPoint w = z + std::polar(1e-7, rng.uniform(0.0, 2 * std::numbers::pi));
    const double limit = diagonal_limit(a, z);
    ASSERT_LE(std::abs(ratio_J(a, z, w) - limit), 1e-5 * limit) << "a=" << a << " z=" << z;
  }
}

TEST(PowerRatio, FirstPowerLimitAtOrigin) {
  EXPECT_NEAR(power_diagonal_limit({0.6, 0.0}, 1, {0.0, 0.0}), 1.6, 1e-15);
  EXPECT_NEAR(power_ratio({0.0, 0.0}, 1, {0.3, 0.0}, {-0.1, 0.2}), 1.0, 1e-15);
  EXPECT_THROW(power_ratio({0.6, 0.0}, 0, {0.3, 0.0}, {-0.1, 0.2}), std::invalid_argument);
}

TEST(PowerRatio, DiagonalLimitMatchesNearbyRatio) {
  RandomPoints rng(33);
  for (unsigned m : {1u, 2u, 5u, 16u}) {
    for (int i = 0; i < 200; ++i) {
      const ComplexPoint a = rng.in_disk(0.9);
      const ComplexPoint z = rng.in_disk(0.9);
      const ComplexPoint w = z + std::polar(1e-7, rng.uniform(0.0, 2 * std::numbers::pi));
      const double limit = power_diagonal_limit(a, m, z);
      ASSERT_NEAR(power_ratio(a, m, z, w), limit, 1e-5 * std::max(limit, 1.0)) << m << " z=" << z;
    }
  }
}

TEST(EstimateLipschitz, RealParameter) {
  const RatioReport report = estimate_lipschitz({0.6, 0.0}, SearchConfig{});
  ASSERT_TRUE(report.closed_form.has_value());
  EXPECT_EQ(*report.closed_form, main_constant(0.6));
  EXPECT_GE(*report.gap, -1e-12);
  EXPECT_LE(*report.gap, 1e-3);
  // Pair order is canonical, not tied to the sign of the real part.
  EXPECT_LT(std::abs(std::abs(report.argmax_z.real()) - 0.5), 0.05);
  EXPECT_LT(std::abs(report.argmax_z + report.argmax_w), 0.05);
  std::uint64_t total = 0;
  for (auto n : report.branch_histogram) total += n;
  EXPECT_GT(total, 0u);
  EXPECT_GE(report.evaluations, total);
}

TEST(EstimateLipschitz, ImaginaryParameterRotatesTheExtremalPair) {
  const RatioReport report = estimate_lipschitz({0.0, 0.3}, SearchConfig{});
  EXPECT_LE(std::abs(*report.gap), 1e-3);
  const double to_plus = std::min(std::abs(report.argmax_z - ComplexPoint(0.0, 0.5)),
                                  std::abs(report.argmax_w - ComplexPoint(0.0, 0.5)));
  const double to_minus = std::min(std::abs(report.argmax_z - ComplexPoint(0.0, -0.5)),
                                   std::abs(report.argmax_w - ComplexPoint(0.0, -0.5)));
  EXPECT_LT(to_plus, 0.05);
  EXPECT_LT(to_minus, 0.05);
}

TEST(EstimateLipschitz, TinyParameterIsNearOne) {
  const RatioReport report = estimate_lipschitz({1e-3, 0.0}, quick_config());
  EXPECT_NEAR(report.sup_estimate, 1.0, 2e-3);
  EXPECT_GE(report.sup_estimate, 1.0);
}

TEST(EstimateLipschitz, DeterministicAndIndependentOfWorkerCount) {
  SearchConfig one = quick_config();
  one.workers = 1;
  SearchConfig three = quick_config();
  three.workers = 3;
  const RatioReport first = estimate_lipschitz({0.4, 0.2}, one);
  EXPECT_EQ(first, estimate_lipschitz({0.4, 0.2}, one));
  EXPECT_EQ(first, estimate_lipschitz({0.4, 0.2}, three));
}

TEST(EstimateLipschitz, RotationInvariant) {
  const SearchConfig cfg = quick_config();
  const double base = estimate_lipschitz({0.7, 0.0}, cfg).sup_estimate;
  for (double angle : {0.4, 2.0, 4.5}) {
    const double rotated = estimate_lipschitz(std::polar(0.7, angle), cfg).sup_estimate;
    EXPECT_NEAR(rotated, base, 2 * cfg.tol) << angle;
  }
}

TEST(EstimateLipschitz, Errors) {
  EXPECT_THROW(estimate_lipschitz({0.0, 0.0}, SearchConfig{}), std::invalid_argument);
  EXPECT_THROW(estimate_lipschitz({1.0, 0.0}, SearchConfig{}), std::invalid_argument);
}

TEST(EstimatePower, FirstPowerMatchesBallConstant) {
  const RatioReport report = estimate_power_constant({0.6, 0.0}, 1, quick_config());
  ASSERT_TRUE(report.closed_form.has_value());
  EXPECT_EQ(*report.closed_form, 1.6);
  EXPECT_NEAR(report.sup_estimate, 1.6, 2e-3);
  EXPECT_LE(report.sup_estimate, 1.6 + kBoundSlack);
  EXPECT_FALSE(estimate_power_constant({0.6, 0.0}, 2, quick_config()).closed_form.has_value());
}

TEST(EstimatePower, IdentityIsOneLipschitz) {
  const RatioReport report = estimate_power_constant({0.0, 0.0}, 1, quick_config());
  EXPECT_LE(report.sup_estimate, 1.0 + 2e-3);
  EXPECT_THROW(estimate_power_constant({0.6, 0.0}, 0, quick_config()), std::invalid_argument);
}

TEST(PowerTable, NonincreasingInM) {
  const PowerTable table = power_monotonicity_table({0.6, 0.0}, 2, quick_config());
  ASSERT_EQ(table.rows.size(), 3u);
  EXPECT_EQ(table.rows[0].m, 1u);
  EXPECT_EQ(table.rows[1].m, 2u);
  EXPECT_EQ(table.rows[2].m, 4u);
  EXPECT_TRUE(table.violations.empty());
  EXPECT_THROW(power_monotonicity_table({0.6, 0.0}, 7, quick_config()), std::invalid_argument);
  EXPECT_THROW(power_monotonicity_table({0.6, 0.0}, -1, quick_config()), std::invalid_argument);
}

TEST(QScan, RowsAndErrors) {
  const auto rows = q_scan({2, 3}, quick_config());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].m, 2u);
  EXPECT_DOUBLE_EQ(rows[0].a, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(rows[1].a, 0.25);
  for (const auto& row : rows) EXPECT_LE(row.report.sup_estimate, 1.0 + row.a + kBoundSlack);
  EXPECT_TRUE(q_scan({}, quick_config()).empty());
  EXPECT_THROW(q_scan({1}, quick_config()), std::invalid_argument);
}

TEST(BoundAudit, NoViolations) {
  const AuditReport report = bound_audit({0.6, 0.0}, 50000, 4);
  EXPECT_EQ(report.samples, 50000u);
  EXPECT_EQ(report.violations, 0u);
  EXPECT_EQ(report.factor_two_violations, 0u);
  EXPECT_EQ(report.bound, main_constant(0.6));
  EXPECT_LE(report.max_ratio, report.bound + kBoundSlack);
  EXPECT_GT(report.max_ratio, 1.0);
  EXPECT_THROW(bound_audit({0.6, 0.0}, 0, 4), std::invalid_argument);
  EXPECT_THROW(bound_audit({0.0, 0.0}, 10, 4), std::invalid_argument);
}

TEST(SearchConfig, Validation) {
  SearchConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.grid_n = 1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.tol = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.workers = -1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.boundary_margin = 0.6;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace jratio
