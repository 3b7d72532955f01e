#include "jratio/complex_geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace jratio {

ComplexPoint require_finite(ComplexPoint z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::domain_error(std::string(what) + " must have finite coordinates");
  }
  return z;
}

void require_in_open_disk(ComplexPoint z, const char* what) {
  require_finite(z, what);
  if (!(std::abs(z) < 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in the open unit disk");
  }
}

ComplexPoint int_pow(ComplexPoint z, unsigned m) {
  ComplexPoint result{1.0, 0.0};
  ComplexPoint base = z;
  while (m != 0) {
    if (m & 1u) result *= base;
    m >>= 1;
    if (m != 0) base *= base;
  }
  return result;
}

DiskAutomorphism::DiskAutomorphism(ComplexPoint a, double phase) {
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(phase)) {
    throw std::invalid_argument("automorphism parameters must be finite");
  }
  const double abs_a = std::abs(a);
  if (!(abs_a < 1.0)) {
    throw std::invalid_argument("automorphism parameter a must satisfy |a| < 1");
  }
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double reduced = std::fmod(phase, kTwoPi);
  if (reduced < 0.0) reduced += kTwoPi;
  if (reduced >= kTwoPi) reduced = 0.0;

  a_ = a;
  phase_ = reduced;
  abs_a_ = abs_a;
  one_minus_abs_a_sq_ = (1.0 - abs_a) * (1.0 + abs_a);
  rotation_ = reduced == 0.0 ? ComplexPoint{1.0, 0.0} : std::polar(1.0, reduced);
}

ComplexPoint mobius_apply(const DiskAutomorphism& h, ComplexPoint z) {
  require_in_open_disk(z, "z");
  const ComplexPoint image = (z + h.a()) / (1.0 + std::conj(h.a()) * z);
  return h.normalized() ? image : h.rotation() * image;
}

double chordal_image_distance(const DiskAutomorphism& h, ComplexPoint z, ComplexPoint w) {
  require_in_open_disk(z, "z");
  require_in_open_disk(w, "w");
  return h.one_minus_abs_a_sq() * std::abs(z - w) /
         (h.denominator_modulus(z) * h.denominator_modulus(w));
}

double dist_to_image_puncture(const DiskAutomorphism& h, ComplexPoint z) {
  require_in_open_disk(z, "z");
  if (!h.normalized()) {
    throw std::invalid_argument("dist_to_image_puncture requires phase = 0");
  }
  return h.one_minus_abs_a_sq() * std::abs(z) / h.denominator_modulus(z);
}

double image_boundary_distance(const DiskAutomorphism& h, ComplexPoint z) {
  require_in_open_disk(z, "z");
  const double r = std::abs(z);
  const double den = h.denominator_modulus(z);
  const double one_minus_sq = h.one_minus_abs_a_sq() * ((1.0 - r) * (1.0 + r)) / (den * den);
  const double image_modulus = std::sqrt(1.0 - one_minus_sq);
  return one_minus_sq / (1.0 + image_modulus);
}

double disk_identity_residual(ComplexPoint a, ComplexPoint z) {
  require_finite(a, "a");
  require_finite(z, "z");
  const double lhs = std::norm(1.0 + std::conj(a) * z) - std::norm(a + z);
  const double rhs = (1.0 - std::norm(a)) * (1.0 - std::norm(z));
  return lhs - rhs;
}

double derivative_modulus(const DiskAutomorphism& h, ComplexPoint z) {
  require_in_open_disk(z, "z");
  const double den = h.denominator_modulus(z);
  return h.one_minus_abs_a_sq() / (den * den);
}

ComplexPoint power_map(const DiskAutomorphism& h, unsigned m, ComplexPoint z) {
  if (m == 0) throw std::invalid_argument("power_map exponent must be positive");
  return int_pow(mobius_apply(h, z), m);
}

}  // namespace jratio
