#include "jratio/lemma_suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "jratio/constants.hpp"
#include "jratio/domains_metric.hpp"
#include "jratio/lemma_checkers.hpp"
#include "sampling.hpp"

namespace jratio {
namespace {

constexpr double kInequalitySlack = 1e-12;
constexpr double kEqualityBand = 1e-9;
constexpr double kPointMargin = 1e-9;
constexpr int kGridPoints = 64;

enum Stream : std::uint64_t { kLe1, kL3Part1, kL3Part2, kK, kG, kS1Chain, kCase2 };

std::uint64_t scaled(std::uint64_t samples, std::uint64_t divisor) {
  return std::max<std::uint64_t>(1, samples / divisor);
}

void record_failure(SuiteResult& result, Counterexample example) {
  if (result.passed) result.counterexample = std::move(example);
  result.passed = false;
}

// Uniform point of B\{0} away from the boundary and the puncture.
ComplexPoint admissible_point(detail::Rng& rng) {
  for (;;) {
    const ComplexPoint z = rng.in_disk(1.0);
    const double r = std::abs(z);
    if (r >= kPointMargin && 1.0 - r >= kPointMargin) return z;
  }
}

ComplexPoint nonzero_parameter(detail::Rng& rng) {
  for (;;) {
    const ComplexPoint a = rng.in_disk(0.95);
    if (std::abs(a) >= 1e-3) return a;
  }
}

struct PairMetrics {
  double source;
  double image;
};

PairMetrics pair_metrics(ComplexPoint a, ComplexPoint z, ComplexPoint w) {
  const DiskAutomorphism h(a);
  return {j_metric(PuncturedDisk::punctured_at({0.0, 0.0}), z, w),
          j_metric(PuncturedDisk::punctured_at(a), mobius_apply(h, z), mobius_apply(h, w))};
}

// Checks that `values` is monotone in the requested direction; returns the
// largest step against that direction and its index.
std::pair<double, std::size_t> worst_monotone_step(const std::vector<double>& values, bool increasing) {
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t at = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double against = increasing ? values[i - 1] - values[i] : values[i] - values[i - 1];
    if (against > worst) {
      worst = against;
      at = i;
    }
  }
  return {worst, at};
}

std::vector<double> half_interval_grid() {
  std::vector<double> grid(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) grid[i] = 0.5 * (i + 1) / kGridPoints;
  return grid;
}

SuiteResult ratio_grid_suite(const SuiteOptions& options, const char* name, std::uint64_t stream,
                             double (*ratio)(double, double)) {
  SuiteResult result{.name = name, .worst = -std::numeric_limits<double>::infinity(), .counterexample = {}};
  detail::Rng rng(detail::mix_seed(options.seed, stream));
  const std::vector<double> grid = half_interval_grid();
  std::vector<double> values(grid.size());
  const std::uint64_t n = scaled(options.samples, 100);
  for (std::uint64_t s = 0; s < n; ++s) {
    const double abs_a = rng.uniform(1e-3, 0.999);
    std::transform(grid.begin(), grid.end(), values.begin(), [&](double r) { return ratio(r, abs_a); });
    const auto [step, at] = worst_monotone_step(values, true);
    ++result.checks;
    result.worst = std::max(result.worst, step);
    if (step > kInequalitySlack) {
      record_failure(result, {{"abs_a", abs_a},
                              {"r_prev", grid[at - 1]},
                              {"r", grid[at]},
                              {"value_prev", values[at - 1]},
                              {"value", values[at]}});
    }
  }
  return result;
}

}  // namespace

SuiteResult le1_suite(const SuiteOptions& options) {
  SuiteResult result{.name = "le1_gap_nonnegative", .worst = std::numeric_limits<double>::infinity(), .counterexample = {}};
  detail::Rng rng(detail::mix_seed(options.seed, kLe1));
  for (std::uint64_t s = 0; s < options.samples; ++s) {
    const double t = rng.uniform(0.0, 20.0);
    const double q = rng.uniform();
    double gap = le1_gap(t, q);
    if (options.fault == FaultInjection::NegateLe1Gap) gap = -gap;
    ++result.checks;
    result.worst = std::min(result.worst, gap);
    if (gap < -kInequalitySlack) record_failure(result, {{"t", t}, {"q", q}, {"gap", gap}});
  }
  return result;
}

SuiteResult l3_part1_suite(const SuiteOptions& options) {
  SuiteResult result{.name = "l3_part1_iff", .counterexample = {}};
  detail::Rng rng(detail::mix_seed(options.seed, kL3Part1));
  std::uint64_t disagreements = 0;
  for (std::uint64_t s = 0; s < options.samples; ++s) {
    const double A = rng.uniform(0.05, 2.0);
    const double B = rng.uniform(0.05, 2.0);
    const double C = rng.uniform(0.01, 0.95);
    const double D = rng.uniform(0.05, 2.0);
    const double theta = rng.uniform(0.0, 3.0);
    const double lhs = B * theta;
    const double rhs = A + C;
    if (std::abs(lhs - rhs) <= kEqualityBand * rhs) continue;
    ++result.checks;
    const bool evaluated = l3_part1_holds(A, B, C, D, theta);
    if (evaluated != (lhs <= rhs)) {
      ++disagreements;
      record_failure(result, {{"A", A}, {"B", B}, {"C", C}, {"D", D}, {"theta", theta},
                              {"evaluated", evaluated ? 1.0 : 0.0}});
    }
  }
  result.worst = static_cast<double>(disagreements);
  return result;
}

SuiteResult l3_part2_suite(const SuiteOptions& options) {
  SuiteResult result{.name = "l3_part2_monotone", .worst = -std::numeric_limits<double>::infinity(), .counterexample = {}};
  detail::Rng rng(detail::mix_seed(options.seed, kL3Part2));
  const std::uint64_t n = scaled(options.samples, 10);
  std::vector<double> thetas(32);
  std::vector<double> values(thetas.size());
  for (std::uint64_t s = 0; s < n; ++s) {
    const double B = rng.uniform(0.05, 5.0);
    const double C = rng.uniform(0.01, 0.99);
    const double D = rng.uniform(0.01, 2.0);
    if (C + D == 1.0) continue;
    for (double& theta : thetas) theta = rng.uniform(1e-6, 10.0);
    std::sort(thetas.begin(), thetas.end());
    std::transform(thetas.begin(), thetas.end(), values.begin(),
                   [&](double theta) { return l3_part2_ratio(B, C, D, theta); });
    const bool increasing = C + D < 1.0;
    const auto [step, at] = worst_monotone_step(values, increasing);
    ++result.checks;
    result.worst = std::max(result.worst, step);
    if (step > kInequalitySlack) {
      record_failure(result, {{"B", B}, {"C", C}, {"D", D}, {"theta_prev", thetas[at - 1]},
                              {"theta", thetas[at]}, {"value_prev", values[at - 1]},
                              {"value", values[at]}});
    }
  }
  return result;
}

SuiteResult k_ratio_suite(const SuiteOptions& options) {
  return ratio_grid_suite(options, "k_ratio_monotone", kK, &k_ratio);
}

SuiteResult g_ratio_suite(const SuiteOptions& options) {
  return ratio_grid_suite(options, "g_ratio_monotone", kG, &g_ratio);
}

SuiteResult s1_chain_suite(const SuiteOptions& options) {
  SuiteResult result{.name = "s1_chain", .worst = -std::numeric_limits<double>::infinity(), .counterexample = {}};
  detail::Rng rng(detail::mix_seed(options.seed, kS1Chain));
  for (std::uint64_t s = 0; s < options.samples; ++s) {
    const ComplexPoint a = nonzero_parameter(rng);
    const ComplexPoint z = admissible_point(rng);
    const ComplexPoint w = admissible_point(rng);
    const double q = rng.uniform();
    if (z == w) continue;
    if (s1_condition_margin(s1_xy(a, z, w), q) < 0.0) continue;
    const PairMetrics j = pair_metrics(a, z, w);
    const double excess = j.image - s1_constant(q) * j.source;
    ++result.checks;
    result.worst = std::max(result.worst, excess);
    if (excess > kInequalitySlack) {
      record_failure(result, {{"a_re", a.real()}, {"a_im", a.imag()}, {"z_re", z.real()},
                              {"z_im", z.imag()}, {"w_re", w.real()}, {"w_im", w.imag()},
                              {"q", q}, {"excess", excess}});
    }
  }
  return result;
}

SuiteResult case2_chain_suite(const SuiteOptions& options) {
  SuiteResult result{.name = "case2_chain", .worst = -std::numeric_limits<double>::infinity(), .counterexample = {}};
  detail::Rng rng(detail::mix_seed(options.seed, kCase2));
  const std::uint64_t max_draws = 200 * options.samples;
  for (std::uint64_t draw = 0; draw < max_draws && result.checks < options.samples; ++draw) {
    const ComplexPoint a = nonzero_parameter(rng);
    ComplexPoint z = admissible_point(rng);
    ComplexPoint w = admissible_point(rng);
    if (z == w) continue;
    if (std::abs(z) < std::abs(w)) std::swap(z, w);
    if (t_branch(a, z, w).tag != BranchTag::ImagePunctureAtW) continue;

    const double abs_a = std::abs(a);
    const double margin = s1_condition_margin(s1_xy(a, z, w), 1.0 - abs_a);
    const PairMetrics j = pair_metrics(a, z, w);
    const double excess = j.image - case12_constant(abs_a) * j.source;
    ++result.checks;
    result.worst = std::max({result.worst, excess, -margin});
    if (excess > kInequalitySlack || margin < -kInequalitySlack) {
      record_failure(result, {{"a_re", a.real()}, {"a_im", a.imag()}, {"z_re", z.real()},
                              {"z_im", z.imag()}, {"w_re", w.real()}, {"w_im", w.imag()},
                              {"margin", margin}, {"excess", excess}});
    }
  }
  if (result.checks < options.samples) {
    record_failure(result, {{"accepted", static_cast<double>(result.checks)},
                            {"requested", static_cast<double>(options.samples)}});
  }
  return result;
}

std::vector<SuiteResult> run_lemma_suites(const SuiteOptions& options) {
  return {le1_suite(options),     l3_part1_suite(options), l3_part2_suite(options),
          k_ratio_suite(options), g_ratio_suite(options),  s1_chain_suite(options),
          case2_chain_suite(options)};
}

}  // namespace jratio
