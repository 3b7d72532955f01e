#pragma once

#include <complex>

namespace jratio {

/// A point of the complex plane. Used for domain points and for the
/// translation parameter of a disk automorphism.
using ComplexPoint = std::complex<double>;

/// Throws std::domain_error if either coordinate is NaN or infinite.
ComplexPoint require_finite(ComplexPoint z, const char* what);

/// Throws std::domain_error unless |z| < 1.
void require_in_open_disk(ComplexPoint z, const char* what);

/// z^m by repeated squaring (std::pow on complex goes through exp/log).
ComplexPoint int_pow(ComplexPoint z, unsigned m);

/**
 * Conformal self-map of the unit disk
 *
 *     h(z) = e^{i phase} (z + a) / (1 + conj(a) z),   |a| < 1.
 *
 * With phase = 0 this is the normalized map with h(0) = a and h(-a) = 0.
 * The rotation prefactor is a Euclidean isometry fixing the origin, so it
 * does not change any j-distance on B\{0}; formulas that refer to the image
 * puncture a require phase = 0.
 */
class DiskAutomorphism {
 public:
  DiskAutomorphism() = default;

  /// Throws std::invalid_argument if |a| >= 1 or a/phase are not finite.
  /// The phase is reduced to [0, 2pi).
  explicit DiskAutomorphism(ComplexPoint a, double phase = 0.0);

  ComplexPoint a() const { return a_; }
  double phase() const { return phase_; }
  double abs_a() const { return abs_a_; }
  bool normalized() const { return phase_ == 0.0; }

  /// 1 - |a|^2, formed as (1 - |a|)(1 + |a|).
  double one_minus_abs_a_sq() const { return one_minus_abs_a_sq_; }

  /// |1 + conj(a) z|
  double denominator_modulus(ComplexPoint z) const {
    return std::abs(1.0 + std::conj(a_) * z);
  }

  ComplexPoint rotation() const { return rotation_; }

 private:
  ComplexPoint a_{0.0, 0.0};
  double phase_ = 0.0;
  double abs_a_ = 0.0;
  double one_minus_abs_a_sq_ = 1.0;
  ComplexPoint rotation_{1.0, 0.0};
};

/// h(z). Throws std::domain_error unless |z| < 1.
ComplexPoint mobius_apply(const DiskAutomorphism& h, ComplexPoint z);

/// |h(z) - h(w)| = (1 - |a|^2)|z - w| / (|1 + conj(a) z| |1 + conj(a) w|).
/// No cancellation for nearby z, w.
double chordal_image_distance(const DiskAutomorphism& h, ComplexPoint z, ComplexPoint w);

/// |h(z) - a| = (1 - |a|^2)|z| / |1 + conj(a) z|.
/// Requires the normalized map (phase = 0); throws std::invalid_argument otherwise.
double dist_to_image_puncture(const DiskAutomorphism& h, ComplexPoint z);

/// 1 - |h(z)|, evaluated from
///     1 - |h(z)|^2 = (1 - |a|^2)(1 - |z|^2) / |1 + conj(a) z|^2
/// so that it stays accurate when z approaches the unit circle.
double image_boundary_distance(const DiskAutomorphism& h, ComplexPoint z);

/// |1 + conj(a) z|^2 - |a + z|^2 - (1 - |a|^2)(1 - |z|^2). Zero up to roundoff.
double disk_identity_residual(ComplexPoint a, ComplexPoint z);

/// |h'(z)| = (1 - |a|^2) / |1 + conj(a) z|^2.
double derivative_modulus(const DiskAutomorphism& h, ComplexPoint z);

/// (h(z))^m, the pointwise power of the image. Throws std::invalid_argument for m = 0.
ComplexPoint power_map(const DiskAutomorphism& h, unsigned m, ComplexPoint z);

}  // namespace jratio
