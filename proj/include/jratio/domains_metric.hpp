#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "jratio/complex_geometry.hpp"

namespace jratio {

/// Points closer than this to a puncture are rejected as lying on it.
inline constexpr double kPunctureGuard = 1e-15;

/// The open unit disk minus a finite set of interior punctures.
class PuncturedDisk {
 public:
  /// The unpunctured unit disk.
  PuncturedDisk() = default;

  /// Throws std::invalid_argument if a puncture is outside the open disk
  /// or two punctures coincide.
  explicit PuncturedDisk(std::vector<ComplexPoint> punctures);

  static PuncturedDisk unit_disk() { return {}; }
  static PuncturedDisk punctured_at(ComplexPoint p) { return PuncturedDisk({p}); }

  std::span<const ComplexPoint> punctures() const { return punctures_; }
  bool contains(ComplexPoint z) const;

 private:
  std::vector<ComplexPoint> punctures_;
};

/// Euclidean distance from z to the boundary of the domain:
/// min(1 - |z|, |z - p| over punctures p). Throws std::domain_error if z is
/// not in the domain.
double boundary_distance(const PuncturedDisk& domain, ComplexPoint z);

/// Distance ratio metric j(x, y) = log(1 + |x - y| / min(d(x), d(y))).
double j_metric(const PuncturedDisk& domain, ComplexPoint x, ComplexPoint y);

/// Which candidate realizes the image-side minimum
///     T(a, z, w) = min{ |h(z) - a|, |h(w) - a|, 1 - |h(z)|, 1 - |h(w)| }.
/// Enumerators are in tie-breaking order.
enum class BranchTag { ImagePunctureAtZ = 0, ImagePunctureAtW = 1, BoundaryAtZ = 2, BoundaryAtW = 3 };

inline constexpr int kBranchCount = 4;

std::string_view to_string(BranchTag tag);

/// Swaps the Z/W role of a tag.
BranchTag swap_roles(BranchTag tag);

struct TBranch {
  BranchTag tag;
  double value;
};

/// Classifies T(a, z, w) for h(z) = (z + a)/(1 + conj(a) z). Requires
/// 0 < |a| < 1 (std::invalid_argument otherwise) and z, w in B\{0}
/// (std::domain_error otherwise).
TBranch t_branch(ComplexPoint a, ComplexPoint z, ComplexPoint w);

}  // namespace jratio
