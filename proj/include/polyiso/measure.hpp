#pragma once

namespace polyiso {

// Volume of the unit ball in R^n (n >= 0).
double unit_ball_volume(int n);

// Measure |S^k| of the unit k-sphere in R^{k+1}; |S^0| = 2 (counting measure).
double sphere_measure(int k);

}  // namespace polyiso
