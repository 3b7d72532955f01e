#include "jratio/domains_metric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace jratio {

PuncturedDisk::PuncturedDisk(std::vector<ComplexPoint> punctures) : punctures_(std::move(punctures)) {
  for (std::size_t i = 0; i < punctures_.size(); ++i) {
    const ComplexPoint p = punctures_[i];
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()) || !(std::abs(p) < 1.0)) {
      throw std::invalid_argument("punctures must lie in the open unit disk");
    }
    for (std::size_t k = 0; k < i; ++k) {
      if (punctures_[k] == p) throw std::invalid_argument("punctures must be pairwise distinct");
    }
  }
}

bool PuncturedDisk::contains(ComplexPoint z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !(std::abs(z) < 1.0)) return false;
  return std::none_of(punctures_.begin(), punctures_.end(),
                      [z](ComplexPoint p) { return z == p || std::abs(z - p) <= kPunctureGuard; });
}

double boundary_distance(const PuncturedDisk& domain, ComplexPoint z) {
  require_in_open_disk(z, "point");
  double d = 1.0 - std::abs(z);
  for (const ComplexPoint p : domain.punctures()) {
    const double to_puncture = std::abs(z - p);
    if (to_puncture <= kPunctureGuard) throw std::domain_error("point lies on a puncture");
    d = std::min(d, to_puncture);
  }
  return d;
}

double j_metric(const PuncturedDisk& domain, ComplexPoint x, ComplexPoint y) {
  const double dx = boundary_distance(domain, x);
  const double dy = boundary_distance(domain, y);
  if (x == y) return 0.0;
  return std::log1p(std::abs(x - y) / std::min(dx, dy));
}

std::string_view to_string(BranchTag tag) {
  switch (tag) {
    case BranchTag::ImagePunctureAtZ: return "ImagePunctureAtZ";
    case BranchTag::ImagePunctureAtW: return "ImagePunctureAtW";
    case BranchTag::BoundaryAtZ: return "BoundaryAtZ";
    case BranchTag::BoundaryAtW: return "BoundaryAtW";
  }
  return "?";
}

BranchTag swap_roles(BranchTag tag) {
  switch (tag) {
    case BranchTag::ImagePunctureAtZ: return BranchTag::ImagePunctureAtW;
    case BranchTag::ImagePunctureAtW: return BranchTag::ImagePunctureAtZ;
    case BranchTag::BoundaryAtZ: return BranchTag::BoundaryAtW;
    case BranchTag::BoundaryAtW: return BranchTag::BoundaryAtZ;
  }
  return tag;
}

TBranch t_branch(ComplexPoint a, ComplexPoint z, ComplexPoint w) {
  require_finite(a, "a");
  if (a == ComplexPoint{0.0, 0.0}) {
    throw std::invalid_argument("t_branch requires a != 0");
  }
  const DiskAutomorphism h(a);
  const PuncturedDisk source = PuncturedDisk::punctured_at({0.0, 0.0});
  boundary_distance(source, z);
  boundary_distance(source, w);

  const std::array<double, kBranchCount> candidates{
      dist_to_image_puncture(h, z),
      dist_to_image_puncture(h, w),
      image_boundary_distance(h, z),
      image_boundary_distance(h, w),
  };
  // First minimum wins, which gives the fixed tie-breaking order.
  const auto it = std::min_element(candidates.begin(), candidates.end());
  return {static_cast<BranchTag>(it - candidates.begin()), *it};
}

}  // namespace jratio
