#pragma once

#include "jratio/complex_geometry.hpp"

namespace jratio {

/// Gap of the logarithmic inequality
///     log((q + e^t)/(1 + q e^t)) <= (1 - q)/(1 + q) t,   t >= 0, q in [0, 1],
/// returned as right side minus left side (non-negative when it holds).
double le1_gap(double t, double q);

/// The quantities X and Y of the two-sided Lipschitz criterion for the
/// map h: B\{0} -> B\{a}:
///   x = |z - w| / min(d(z), d(w))                         = exp(j(z, w)) - 1
///   y = |z - w| / |h(z) - h(w)| * min(d'(h z), d'(h w)) / min(d(z), d(w))
struct XYPair {
  double x;
  double y;
};

/// Requires 0 < |a| < 1, z != w, both in B\{0}. Cross-checks x against
/// exp(j) - 1 and throws std::logic_error on a mismatch beyond 1e-12 relative.
XYPair s1_xy(ComplexPoint a, ComplexPoint z, ComplexPoint w);

/// y + (y - 1)/(x + 1) - q. A non-negative value means the pair satisfies the
/// hypothesis that yields the factor 2/(1 + q).
double s1_condition_margin(const XYPair& xy, double q);

/// Evaluates
///   1 + (B/D) theta (1 + D/(1 + A)) (1 + B theta/(1 - C))
///       <= (1 + (B/D) theta)(1 + B theta/(1 - C))
/// with a 1e-12 relative slack on the right side. Mathematically this is
/// equivalent to B theta <= A + C.
/// Requires A, B, D > 0, 0 < C < 1, theta >= 0.
bool l3_part1_holds(double A, double B, double C, double D, double theta);

/// log(1 + B theta/(1 - C)) / log(1 + B theta / D); increasing in theta when
/// C + D < 1 and decreasing when C + D > 1. Requires B, D > 0, 0 < C < 1, theta > 0.
double l3_part2_ratio(double B, double C, double D, double theta);

/// k(r) = log(1 + |a|/(1 - |a|(1 - r))) / log(1 + 1/r), r > 0, |a| in [0, 1).
double k_ratio(double r, double abs_a);

/// g(r) = 1 + log(1 + |a|/(1 - |a| r)) / log(1 + 1/r), r in (0, 1/2], |a| in [0, 1).
/// g(1/2) equals the main constant.
double g_ratio(double r, double abs_a);

}  // namespace jratio
