#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace polyiso {

/// Least perimeter enclosing volume V in R^n (round balls).
double euclidean_profile(int n, double volume);

/// Volume of a geodesic cap of angular radius theta in the unit n-sphere.
double sphere_cap_volume(int n, double theta);

/// Least perimeter enclosing volume V in the unit n-sphere (caps).
/// n = 1 returns 2 (two boundary points).
double sphere_profile(int n, double volume);

/// Apex-ball profile of the n-dimensional cone over a link of measure omega.
double cone_profile(double omega, int n, double volume);

/// Sampled isoperimetric profile (V, A) on a volume grid.
struct Profile {
  int n = 0;
  std::vector<double> volumes;
  std::vector<double> perimeters;
  std::string tag;
  double total_volume = std::numeric_limits<double>::infinity();
};

/// Log-spaced grid, endpoints included.
std::vector<double> log_grid(double vmin, double vmax, int points = 256);

Profile make_euclidean_profile(int n, const std::vector<double>& volumes);
Profile make_sphere_profile(int n, const std::vector<double>& volumes);
Profile make_cone_profile(double omega, int n, const std::vector<double>& volumes);

struct Domination {
  bool holds = false;
  double worst_margin = 0.0;
  double worst_volume = 0.0;
};

/// Whether `upper` >= `lower` - 1e-9 on the shared grid; reports the least margin.
Domination dominates(const Profile& upper, const Profile& lower);

struct PowerLawFit {
  double coefficient = 0.0;
  double exponent = 0.0;
  /// Root-mean-square residual in log A.
  double residual = 0.0;
};

/// Least-squares fit of log A = log c + t log V. Needs >= 8 samples spanning a
/// factor of 10 in V.
PowerLawFit fit_power_law(std::span<const double> volumes, std::span<const double> perimeters);

}  // namespace polyiso
