#include "polyiso/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "polyiso/error.hpp"
#include "polyiso/profiles.hpp"

namespace polyiso {
namespace {

constexpr double kCubeArea = 6.0;
using Gauss = boost::math::quadrature::gauss<double, 30>;

struct Family {
  const char* name;
  double (*perimeter)(double);
  double lo;
  double hi;
};

double vertex_ball(double v) { return std::sqrt(3.0 * std::numbers::pi * v); }
double flat_disc(double v) { return std::sqrt(4.0 * std::numbers::pi * v); }
double band(double) { return 8.0; }
double cap_loop(double) { return 4.0; }

// Validity ranges are closed at the top: the vertex ball of radius 1 still
// lies in the star, the face-centred disc reaches the corners at radius 1/sqrt 2.
const Family kFamilies[] = {
    {"vertex-ball", vertex_ball, 0.0, 0.75 * std::numbers::pi},
    {"flat-disc", flat_disc, 0.0, 0.5 * std::numbers::pi},
    {"band", band, 0.0, 4.0},
    {"cap-loop", cap_loop, 1.0, 5.0},
};

// Jacobian of x -> x/|x| applied to w.
Eigen::VectorXd project_tangent(const Eigen::VectorXd& x, const Eigen::VectorXd& w) {
  const double r = x.norm();
  const Eigen::VectorXd u = x / r;
  return (w - u * u.dot(w)) / r;
}

double projected_triangle(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  // Duffy square: x(s, t) = a + s (b - a) + s t (c - b).
  const Eigen::VectorXd ab = b - a;
  const Eigen::VectorXd bc = c - b;
  return Gauss::integrate(
      [&](double s) {
        return Gauss::integrate(
            [&](double t) {
              const Eigen::VectorXd x = a + s * ab + s * t * bc;
              const Eigen::VectorXd pu = project_tangent(x, ab + t * bc);
              const Eigen::VectorXd pv = project_tangent(x, s * bc);
              const double g = pu.squaredNorm() * pv.squaredNorm() - std::pow(pu.dot(pv), 2);
              return std::sqrt(std::max(0.0, g));
            },
            0.0, 1.0);
      },
      0.0, 1.0);
}

Eigen::VectorXd lift(double x, double y, double z, double w) {
  Eigen::VectorXd p(4);
  p << x, y, z, w;
  return p;
}

}  // namespace

CompetitorReport cube_competitors(double volume) {
  if (!(volume > 0) || !(volume < kCubeArea))
    throw Error(ErrorKind::VolumeOutOfRange, "cube competitor volume must lie in (0, 6)");
  CompetitorReport report;
  report.volume = volume;
  report.winning_perimeter = std::numeric_limits<double>::infinity();
  auto add = [&](std::string name, double perimeter, bool valid) {
    report.entries.push_back({name, perimeter, valid});
    if (valid && perimeter < report.winning_perimeter) {
      report.winning_perimeter = perimeter;
      report.winner = name;
    }
  };
  for (const auto& f : kFamilies) {
    add(f.name, f.perimeter(volume), volume > f.lo && volume <= f.hi);
    const double w = kCubeArea - volume;
    add(std::string(f.name) + "-complement", f.perimeter(w), w > f.lo && w <= f.hi);
  }
  return report;
}

std::vector<Crossover> cube_crossovers(int samples) {
  if (samples < 2) throw Error(ErrorKind::BadArgument, "need at least two samples");
  std::vector<Crossover> out;
  auto at = [&](int i) { return kCubeArea * (i + 0.5) / samples; };
  std::string previous = cube_competitors(at(0)).winner;
  for (int i = 1; i < samples; ++i) {
    const std::string current = cube_competitors(at(i)).winner;
    if (current == previous) continue;
    double lo = at(i - 1);
    double hi = at(i);
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      if (cube_competitors(mid).winner == previous) lo = mid;
      else hi = mid;
    }
    out.push_back({0.5 * (lo + hi), previous, current});
    previous = current;
  }
  return out;
}

DoublePyramidReport double_pyramid_report(double theta, double volume, std::optional<double> base_link) {
  if (!(theta > 0) || !(theta < 2.0 * std::numbers::pi - 1e-9))
    throw Error(ErrorKind::BadArgument, "apex link must lie in (0, 2 pi)");
  if (!(volume > 0)) throw Error(ErrorKind::VolumeOutOfRange, "volume must be positive");
  DoublePyramidReport r;
  r.theta = theta;
  r.volume = volume;
  r.one_sided = cone_profile(theta, 2, volume);
  r.glued = cone_profile(2.0 * theta, 2, volume);
  r.ratio = r.glued / r.one_sided;
  r.glued_ball_minimizing = r.glued <= r.one_sided;
  if (base_link) {
    r.base_link = *base_link;
    r.base_ball = cone_profile(*base_link, 2, volume);
    r.one_sided_beats_base = r.one_sided < *r.base_ball;
  }
  return r;
}

double suspension_area(double length) {
  if (!(length >= 0)) throw Error(ErrorKind::BadArgument, "length must be non-negative");
  const double h = 0.5 * std::numbers::pi;
  return Gauss::integrate([&](double s) { return length * std::cos(s); }, -h, h);
}

double projected_area(const std::vector<Eigen::VectorXd>& polygon) {
  if (polygon.size() < 3) throw Error(ErrorKind::BadArgument, "polygon needs three vertices");
  const Eigen::VectorXd& a = polygon[0];
  // Distance from the origin to the polygon's affine plane.
  Eigen::MatrixXd span(a.size(), 2);
  span.col(0) = polygon[1] - a;
  span.col(1) = polygon[2] - a;
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(span);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(a.size(), 2);
  const Eigen::VectorXd foot = a - q * (q.transpose() * a);
  if (foot.norm() < 1e-9) throw Error(ErrorKind::ProjectionDegenerate, "polygon plane passes through the origin");
  double total = 0.0;
  for (std::size_t i = 1; i + 1 < polygon.size(); ++i) total += projected_triangle(a, polygon[i], polygon[i + 1]);
  return total;
}

SpikedConeReport spiked_cone_report(const SpikedConeSpec& spec, double volume) {
  if (!(spec.height > 0)) throw Error(ErrorKind::ProjectionDegenerate, "cube faces pass through the cone apex");
  if (!(spec.side > 0) || !(spec.spike_circumradius > 0) || !(spec.spike_circumradius < 0.5 * spec.side))
    throw Error(ErrorKind::BadArgument, "spike base must fit inside the top face");
  if (!(spec.apex_half_angle_deg > 0) || !(spec.apex_half_angle_deg < 90))
    throw Error(ErrorKind::BadArgument, "apex half-angle must lie in (0, 90) degrees");
  if (!(volume > 0)) throw Error(ErrorKind::VolumeOutOfRange, "volume must be positive");

  const double s = 0.5 * spec.side;
  const double w = spec.height;
  const double radius = spec.spike_circumradius;
  SpikedConeReport r;
  r.volume = volume;
  r.spike_height = radius / std::tan(spec.apex_half_angle_deg * std::numbers::pi / 180.0);

  std::vector<Eigen::VectorXd> base;
  for (int k = 0; k < 3; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / 3.0;
    base.push_back(lift(radius * std::cos(phi), radius * std::sin(phi), s, w));
  }
  const Eigen::VectorXd tip = lift(0.0, 0.0, s + r.spike_height, w);
  for (int k = 0; k < 3; ++k) {
    const Eigen::VectorXd u = base[k] - tip;
    const Eigen::VectorXd v = base[(k + 1) % 3] - tip;
    r.theta_p += std::atan2(std::sqrt(u.squaredNorm() * v.squaredNorm() - std::pow(u.dot(v), 2)), u.dot(v));
  }

  // Radial projection is injective on x4 = w, so face areas add; the spike
  // replaces its base triangle in the top face.
  double area = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    for (double sign : {-1.0, 1.0}) {
      std::vector<Eigen::VectorXd> face;
      const double corners[4][2] = {{-s, -s}, {s, -s}, {s, s}, {-s, s}};
      for (const auto& c : corners) {
        Eigen::VectorXd p(4);
        p(axis) = sign * s;
        p((axis + 1) % 3) = c[0];
        p((axis + 2) % 3) = c[1];
        p(3) = w;
        face.push_back(p);
      }
      area += projected_area(face);
    }
  }
  area -= projected_area(base);
  for (int k = 0; k < 3; ++k) area += projected_area({base[k], base[(k + 1) % 3], tip});

  r.link_apex = area;
  r.link_q = suspension_area(r.theta_p);
  r.link_hypercube = 2.0 * std::numbers::pi;
  r.perimeter_q = cone_profile(r.link_q, 3, volume);
  r.perimeter_apex = cone_profile(r.link_apex, 3, volume);
  r.perimeter_hypercube = cone_profile(r.link_hypercube, 3, volume);
  r.q_beats_apex = r.link_q < r.link_apex;
  return r;
}

}  // namespace polyiso
