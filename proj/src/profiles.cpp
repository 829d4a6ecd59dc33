#include "polyiso/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polyiso/error.hpp"
#include "polyiso/measure.hpp"

namespace polyiso {

double euclidean_profile(int n, double volume) {
  if (n < 1) throw Error(ErrorKind::BadArgument, "dimension must be >= 1");
  if (!(volume > 0)) throw Error(ErrorKind::VolumeOutOfRange, "volume must be positive");
  return n * std::pow(unit_ball_volume(n), 1.0 / n) * std::pow(volume, (n - 1.0) / n);
}

double sphere_cap_volume(int n, double theta) {
  // int_0^theta sin^k via I_k = -sin^{k-1} cos / k + (k-1)/k I_{k-2}
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  double even = theta;       // I_0
  double odd = 1.0 - c;      // I_1
  const int k_target = n - 1;
  for (int k = 2; k <= k_target; ++k) {
    double& slot = (k % 2 == 0) ? even : odd;
    slot = -std::pow(s, k - 1) * c / k + (k - 1.0) / k * slot;
  }
  const double integral = (k_target % 2 == 0) ? even : odd;
  return sphere_measure(n - 1) * integral;
}

double sphere_profile(int n, double volume) {
  if (n < 1) throw Error(ErrorKind::BadArgument, "dimension must be >= 1");
  const double total = sphere_measure(n);
  if (!(volume > 0) || !(volume < total)) throw Error(ErrorKind::VolumeOutOfRange, "volume outside (0, |S^n|)");
  if (n == 1) return 2.0;
  double lo = 0.0;
  double hi = std::numbers::pi;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (sphere_cap_volume(n, mid) < volume) lo = mid;
    else hi = mid;
  }
  const double theta = 0.5 * (lo + hi);
  return sphere_measure(n - 1) * std::pow(std::sin(theta), n - 1);
}

double cone_profile(double omega, int n, double volume) {
  if (n < 1) throw Error(ErrorKind::BadArgument, "dimension must be >= 1");
  if (!(omega > 0)) throw Error(ErrorKind::BadArgument, "link measure must be positive");
  if (!(volume > 0)) throw Error(ErrorKind::VolumeOutOfRange, "volume must be positive");
  return std::pow(omega, 1.0 / n) * std::pow(n * volume, (n - 1.0) / n);
}

std::vector<double> log_grid(double vmin, double vmax, int points) {
  if (!(vmin > 0) || !(vmax > vmin) || points < 2) throw Error(ErrorKind::BadArgument, "need 0 < vmin < vmax, points >= 2");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double a = std::log(vmin);
  const double b = std::log(vmax);
  for (int i = 0; i < points; ++i) grid[i] = std::exp(a + (b - a) * i / (points - 1));
  grid.front() = vmin;
  grid.back() = vmax;
  return grid;
}

Profile make_euclidean_profile(int n, const std::vector<double>& volumes) {
  Profile p{n, volumes, {}, "euclidean"};
  for (double v : volumes) p.perimeters.push_back(euclidean_profile(n, v));
  return p;
}

Profile make_sphere_profile(int n, const std::vector<double>& volumes) {
  Profile p{n, volumes, {}, "sphere", sphere_measure(n)};
  for (double v : volumes) p.perimeters.push_back(sphere_profile(n, v));
  return p;
}

Profile make_cone_profile(double omega, int n, const std::vector<double>& volumes) {
  Profile p{n, volumes, {}, "cone"};
  for (double v : volumes) p.perimeters.push_back(cone_profile(omega, n, v));
  return p;
}

Domination dominates(const Profile& upper, const Profile& lower) {
  if (upper.n != lower.n) throw Error(ErrorKind::GridMismatch, "profiles differ in dimension");
  if (upper.volumes.size() != lower.volumes.size() || upper.volumes.empty())
    throw Error(ErrorKind::GridMismatch, "profiles are sampled on different grids");
  Domination result;
  result.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < upper.volumes.size(); ++i) {
    const double v = upper.volumes[i];
    if (std::abs(v - lower.volumes[i]) > 1e-12 * std::max(1.0, std::abs(v)))
      throw Error(ErrorKind::GridMismatch, "profiles are sampled on different grids");
    const double margin = upper.perimeters[i] - lower.perimeters[i];
    if (margin < result.worst_margin) {
      result.worst_margin = margin;
      result.worst_volume = v;
    }
  }
  result.holds = result.worst_margin >= -1e-9;
  return result;
}

PowerLawFit fit_power_law(std::span<const double> volumes, std::span<const double> perimeters) {
  if (volumes.size() != perimeters.size()) throw Error(ErrorKind::BadArgument, "sample arrays differ in length");
  if (volumes.size() < 8) throw Error(ErrorKind::InsufficientSamples, "need at least 8 samples");
  const auto [vmin, vmax] = std::minmax_element(volumes.begin(), volumes.end());
  if (!(*vmin > 0) || *vmax < 10.0 * *vmin)
    throw Error(ErrorKind::InsufficientSamples, "volumes must be positive and span a decade");
  const double m = static_cast<double>(volumes.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < volumes.size(); ++i) {
    if (!(perimeters[i] > 0)) throw Error(ErrorKind::InsufficientSamples, "perimeters must be positive");
    const double x = std::log(volumes[i]);
    const double y = std::log(perimeters[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  double sse = 0;
  for (std::size_t i = 0; i < volumes.size(); ++i) {
    const double r = std::log(perimeters[i]) - (intercept + slope * std::log(volumes[i]));
    sse += r * r;
  }
  return {std::exp(intercept), slope, std::sqrt(sse / m)};
}

}  // namespace polyiso
