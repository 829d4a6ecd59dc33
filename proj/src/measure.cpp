#include "polyiso/measure.hpp"

#include <numbers>
#include <stdexcept>

namespace polyiso {

double unit_ball_volume(int n) {
  if (n < 0) throw std::invalid_argument("unit_ball_volume: negative dimension");
  // omega_n = omega_{n-2} * 2 pi / n, omega_0 = 1, omega_1 = 2
  double even = 1.0;
  double odd = 2.0;
  for (int k = 2; k <= n; ++k) {
    double& slot = (k % 2 == 0) ? even : odd;
    slot *= 2.0 * std::numbers::pi / k;
  }
  return (n % 2 == 0) ? even : odd;
}

double sphere_measure(int k) {
  if (k < 0) throw std::invalid_argument("sphere_measure: negative dimension");
  return (k + 1) * unit_ball_volume(k + 1);
}

}  // namespace polyiso
