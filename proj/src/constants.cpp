#include "jratio/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace jratio {
namespace {

void require_modulus(double t) {
  if (!(t >= 0.0 && t < 1.0)) throw std::invalid_argument("|a| must lie in [0, 1)");
}

}  // namespace

double main_constant(double abs_a) {
  require_modulus(abs_a);
  // (2 + t)/(2 - t) = 1 + 2t/(2 - t)
  return 1.0 + std::log1p(2.0 * abs_a / (2.0 - abs_a)) / std::log(3.0);
}

double case12_constant(double abs_a) {
  require_modulus(abs_a);
  return 2.0 / (2.0 - abs_a);
}

double ball_constant(double abs_f0) {
  require_modulus(abs_f0);
  return 1.0 + abs_f0;
}

double s1_constant(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("q must lie in [0, 1]");
  return 2.0 / (1.0 + q);
}

ConstantsTable constants_table(double abs_a) {
  const ConstantsTable table{abs_a, main_constant(abs_a), case12_constant(abs_a),
                             ball_constant(abs_a), kGehringOsgoodConstant};
  if (!(table.c_case12 <= table.c_main && table.c_main <= table.c_ball &&
        table.c_ball < table.c_go)) {
    throw std::logic_error("constant ordering violated");
  }
  return table;
}

}  // namespace jratio
