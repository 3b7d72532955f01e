#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jratio {

/// Harness self-test: replaces a checker with a deliberately wrong one so a
/// run must fail and report a counterexample.
enum class FaultInjection { None, NegateLe1Gap };

struct SuiteOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  FaultInjection fault = FaultInjection::None;
};

/// Named inputs and values of the first failing sample.
using Counterexample = std::vector<std::pair<std::string, double>>;

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::uint64_t checks = 0;
  /// Suite-specific extremal statistic (smallest gap, largest excess, ...).
  double worst = 0.0;
  std::optional<Counterexample> counterexample;
};

// Individual suites. Sample counts derive from options.samples:
// pointwise suites draw `samples` points, the l3 part 2 suite draws
// samples/10 parameter tuples and the k/g suites samples/100 values of |a|
// (each at least 1), every tuple checked along a sorted grid.

/// le1_gap(t, q) >= -1e-12 for t in [0, 20], q in [0, 1].
SuiteResult le1_suite(const SuiteOptions& options);
/// l3_part1_holds agrees with B theta <= A + C outside a 1e-9 relative band.
SuiteResult l3_part1_suite(const SuiteOptions& options);
/// l3_part2_ratio is monotone in theta with the direction set by sign(1 - C - D).
SuiteResult l3_part2_suite(const SuiteOptions& options);
/// k_ratio nondecreasing on grids over (0, 1/2].
SuiteResult k_ratio_suite(const SuiteOptions& options);
/// g_ratio nondecreasing on grids over (0, 1/2].
SuiteResult g_ratio_suite(const SuiteOptions& options);
/// Pairs meeting the (X, Y, q) hypothesis satisfy j' <= 2/(1 + q) j.
SuiteResult s1_chain_suite(const SuiteOptions& options);
/// Pairs with |z| >= |w| whose image minimum is |h(w) - a| satisfy the
/// hypothesis with q = 1 - |a| and j' <= 2/(2 - |a|) j.
SuiteResult case2_chain_suite(const SuiteOptions& options);

std::vector<SuiteResult> run_lemma_suites(const SuiteOptions& options);

}  // namespace jratio
