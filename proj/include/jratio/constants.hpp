#pragma once

namespace jratio {

// Every constant depends on |a| only; callers with a complex parameter pass
// its modulus. Out-of-range arguments throw std::invalid_argument.

/// Sharp j-Lipschitz constant of h: B\{0} -> B\{a}, h(0) = a:
/// C(|a|) = 1 + log((2 + |a|)/(2 - |a|)) / log 3.
double main_constant(double abs_a);

/// Constant 2/(2 - |a|) obtained in the two image-puncture branches.
double case12_constant(double abs_a);

/// Sharp constant 1 + |f(0)| for automorphisms of the unpunctured disk.
double ball_constant(double abs_f0);

/// 2/(1 + q) for 0 <= q <= 1.
double s1_constant(double q);

/// Universal factor for Moebius maps between proper subdomains.
inline constexpr double kGehringOsgoodConstant = 2.0;

struct ConstantsTable {
  double abs_a;
  double c_main;
  double c_case12;
  double c_ball;
  double c_go;
};

/// Evaluates all constants at |a| and checks
/// c_case12 <= c_main <= c_ball < c_go (std::logic_error if violated).
ConstantsTable constants_table(double abs_a);

}  // namespace jratio
