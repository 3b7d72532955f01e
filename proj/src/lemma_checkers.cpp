#include "jratio/lemma_checkers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jratio/domains_metric.hpp"

namespace jratio {
namespace {

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

}  // namespace

double le1_gap(double t, double q) {
  require(std::isfinite(t) && t >= 0.0, "le1_gap: t must be finite and >= 0");
  require(q >= 0.0 && q <= 1.0, "le1_gap: q must lie in [0, 1]");
  // (q + e^t)/(1 + q e^t) - 1 = (1 - q)(1 - e^{-t}) / (e^{-t} + q), finite for all t.
  const double e_neg = std::exp(-t);
  const double lhs = std::log1p((1.0 - q) * (-std::expm1(-t)) / (e_neg + q));
  return (1.0 - q) / (1.0 + q) * t - lhs;
}

XYPair s1_xy(ComplexPoint a, ComplexPoint z, ComplexPoint w) {
  if (z == w) throw std::invalid_argument("s1_xy requires z != w");
  const TBranch image_min = t_branch(a, z, w);  // validates a, z, w
  const PuncturedDisk source = PuncturedDisk::punctured_at({0.0, 0.0});
  const double d_min = std::min(boundary_distance(source, z), boundary_distance(source, w));
  const double separation = std::abs(z - w);
  const DiskAutomorphism h(a);

  const double x = separation / d_min;
  const double y = separation / chordal_image_distance(h, z, w) * image_min.value / d_min;

  const double from_metric = std::expm1(j_metric(source, z, w));
  if (std::abs(from_metric - x) > 1e-12 * std::max(x, 1e-300)) {
    throw std::logic_error("s1_xy: X disagrees with exp(j) - 1");
  }
  return {x, y};
}

double s1_condition_margin(const XYPair& xy, double q) {
  return xy.y + (xy.y - 1.0) / (xy.x + 1.0) - q;
}

bool l3_part1_holds(double A, double B, double C, double D, double theta) {
  require(A > 0.0 && B > 0.0 && D > 0.0, "l3_part1: A, B, D must be positive");
  require(C > 0.0 && C < 1.0, "l3_part1: C must lie in (0, 1)");
  require(std::isfinite(theta) && theta >= 0.0, "l3_part1: theta must be >= 0");
  const double s = B / D * theta;
  const double u = B * theta / (1.0 - C);
  const double lhs = 1.0 + s * (1.0 + D / (1.0 + A)) * (1.0 + u);
  const double rhs = (1.0 + s) * (1.0 + u);
  return lhs <= rhs * (1.0 + 1e-12);
}

double l3_part2_ratio(double B, double C, double D, double theta) {
  require(B > 0.0 && D > 0.0, "l3_part2: B, D must be positive");
  require(C > 0.0 && C < 1.0, "l3_part2: C must lie in (0, 1)");
  require(std::isfinite(theta) && theta > 0.0, "l3_part2: theta must be > 0");
  return std::log1p(B * theta / (1.0 - C)) / std::log1p(B * theta / D);
}

double k_ratio(double r, double abs_a) {
  require(std::isfinite(r) && r > 0.0, "k_ratio: r must be > 0");
  require(abs_a >= 0.0 && abs_a < 1.0, "k_ratio: |a| must lie in [0, 1)");
  return std::log1p(abs_a / (1.0 - abs_a * (1.0 - r))) / std::log1p(1.0 / r);
}

double g_ratio(double r, double abs_a) {
  require(r > 0.0 && r <= 0.5, "g_ratio: r must lie in (0, 1/2]");
  require(abs_a >= 0.0 && abs_a < 1.0, "g_ratio: |a| must lie in [0, 1)");
  return 1.0 + std::log1p(abs_a / (1.0 - abs_a * r)) / std::log1p(1.0 / r);
}

}  // namespace jratio
