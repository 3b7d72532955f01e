#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "jratio/complex_geometry.hpp"
#include "jratio/domains_metric.hpp"

namespace jratio {

struct SearchConfig {
  /// Points per polar axis: grid_n radii times grid_n angles.
  int grid_n = 48;
  /// Pattern-search iterations per refinement start.
  int refine_iters = 200;
  /// Number of refinement starts taken from the best grid candidates.
  int refine_starts = 16;
  /// Pairs with j_G(z, w) below this are left to the diagonal-limit scan.
  double diag_epsilon = 1e-6;
  /// Exclusion band at |z| = 1 and around punctures.
  double boundary_margin = 1e-9;
  std::uint64_t seed = 0;
  /// Convergence tolerance used by callers judging the estimate.
  double tol = 1e-3;
  /// Worker threads; 0 selects std::thread::hardware_concurrency(). The
  /// report does not depend on this value.
  int workers = 0;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct RatioReport {
  ComplexPoint a;
  double sup_estimate = 0.0;
  ComplexPoint argmax_z;
  ComplexPoint argmax_w;
  std::optional<double> closed_form;
  /// closed_form - sup_estimate when closed_form is present.
  std::optional<double> gap;
  /// Evaluated candidates per BranchTag, indexed by the enumerator value.
  std::array<std::uint64_t, kBranchCount> branch_histogram{};
  std::uint64_t evaluations = 0;
  std::uint64_t seed = 0;

  bool operator==(const RatioReport&) const = default;
};

/// J(z, w; a) = j_{B\{a}}(h(z), h(w)) / j_{B\{0}}(z, w), h(z) = (z + a)/(1 + conj(a) z).
/// Symmetric in (z, w) bit for bit. a = 0 is accepted (h is the identity).
/// Throws std::invalid_argument for z == w or |a| >= 1, std::domain_error if
/// z or w is outside B\{0}.
double ratio_J(ComplexPoint a, ComplexPoint z, ComplexPoint w);

/// Limit of ratio_J as w -> z: |h'(z)| d_{B\{0}}(z) / d_{B\{a}}(h(z)).
double diagonal_limit(ComplexPoint a, ComplexPoint z);

/// j_D((h z)^m, (h w)^m) / j_D(z, w) on the unpunctured disk D.
double power_ratio(ComplexPoint a, unsigned m, ComplexPoint z, ComplexPoint w);

/// Limit of power_ratio as w -> z:
/// m |h|^{m-1} |h'(z)| (1 - |z|) / (1 - |h(z)|^m).
double power_diagonal_limit(ComplexPoint a, unsigned m, ComplexPoint z);

/// Supremum of ratio_J over B\{0} x B\{0}: polar grid over pairs, a
/// diagonal-limit scan over the same grid, and pattern-search refinement of
/// the best candidates. closed_form is main_constant(|a|). Deterministic for a
/// fixed configuration. Requires 0 < |a| < 1.
RatioReport estimate_lipschitz(ComplexPoint a, const SearchConfig& cfg);

/// Same machinery for z -> (h(z))^m on the unpunctured disk. closed_form is
/// ball_constant(|a|) for m = 1 and absent otherwise. Requires |a| < 1, m >= 1.
RatioReport estimate_power_constant(ComplexPoint a, unsigned m, const SearchConfig& cfg);

struct PowerRow {
  unsigned m;
  RatioReport report;
};

struct PowerTable {
  std::vector<PowerRow> rows;
  /// Indices i with rows[i].sup_estimate > rows[i-1].sup_estimate + 2 tol.
  std::vector<std::size_t> violations;
};

/// Estimates for m = 1, 2, 4, ..., 2^n_max. Requires 0 <= n_max <= 6.
PowerTable power_monotonicity_table(ComplexPoint a, int n_max, const SearchConfig& cfg);

struct QRow {
  unsigned m;
  double a;
  RatioReport report;
};

/// Estimates C(m, 1/(m+1)) for each m (all m >= 2, else std::invalid_argument).
/// Emits data only.
std::vector<QRow> q_scan(const std::vector<unsigned>& m_list, const SearchConfig& cfg);

struct AuditReport {
  ComplexPoint a;
  std::uint64_t samples = 0;
  double max_ratio = 0.0;
  ComplexPoint argmax_z;
  ComplexPoint argmax_w;
  double bound = 0.0;
  /// Samples above main_constant(|a|) + 1e-9.
  std::uint64_t violations = 0;
  /// Samples above 2.
  std::uint64_t factor_two_violations = 0;
};

/// Max of ratio_J over n_samples pairs drawn uniformly from the bidisk,
/// rejecting points within the default boundary margin and pairs closer than
/// the default diagonal epsilon. Requires 0 < |a| < 1 and n_samples >= 1.
AuditReport bound_audit(ComplexPoint a, std::uint64_t n_samples, std::uint64_t seed);

/// Slack allowed above a closed-form upper bound.
inline constexpr double kBoundSlack = 1e-9;

}  // namespace jratio
