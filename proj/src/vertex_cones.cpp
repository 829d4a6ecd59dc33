#include "polyiso/vertex_cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "polyiso/error.hpp"
#include "polyiso/measure.hpp"

namespace polyiso {
namespace {

double segment_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd ab = b - a;
  const double len2 = ab.squaredNorm();
  double s = len2 > 0 ? (p - a).dot(ab) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return (p - (a + s * ab)).norm();
}

// Distance from p to a convex polygon (ordered, outward normal given) in R^3.
double polygon_distance(const Eigen::Vector3d& p, const std::vector<Eigen::Vector3d>& polygon,
                        const Eigen::Vector3d& normal) {
  const Eigen::Vector3d n = normal.normalized();
  const double height = n.dot(p - polygon[0]);
  const Eigen::Vector3d foot = p - height * n;
  bool inside = true;
  const std::size_t m = polygon.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Vector3d& a = polygon[i];
    const Eigen::Vector3d& b = polygon[(i + 1) % m];
    if ((b - a).cross(foot - a).dot(n) < 0) {
      inside = false;
      break;
    }
  }
  if (inside) return std::abs(height);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) best = std::min(best, segment_distance(p, polygon[i], polygon[(i + 1) % m]));
  return best;
}

struct FacetCorner {
  double angle = 0.0;
  double reach = 0.0;
};

FacetCorner polygon_corner(const Polytope& polytope, int facet, int vertex) {
  const auto& cycle = polytope.facets()[facet];
  const auto& verts = polytope.vertices();
  const std::size_t m = cycle.size();
  const auto pos = static_cast<std::size_t>(std::find(cycle.begin(), cycle.end(), vertex) - cycle.begin());
  const Eigen::Vector3d apex = verts[vertex].head<3>();
  const Eigen::Vector3d u = verts[cycle[(pos + m - 1) % m]].head<3>() - apex;
  const Eigen::Vector3d w = verts[cycle[(pos + 1) % m]].head<3>() - apex;
  FacetCorner corner;
  corner.angle = std::atan2(u.cross(w).norm(), u.dot(w));
  corner.reach = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    const int a = cycle[i];
    const int b = cycle[(i + 1) % m];
    if (a == vertex || b == vertex) continue;
    corner.reach = std::min(corner.reach, segment_distance(verts[vertex], verts[a], verts[b]));
  }
  return corner;
}

FacetCorner solid_corner(const Polytope& polytope, int facet, int vertex) {
  const auto& members = polytope.facets()[facet];
  const auto local_generic = facet_local_coordinates(polytope, facet, polytope.vertices()[vertex]);
  std::vector<Eigen::Vector3d> local;
  for (const auto& p : local_generic) local.emplace_back(p.head<3>());
  const int self = static_cast<int>(std::find(members.begin(), members.end(), vertex) - members.begin());

  FacetCorner corner;
  corner.reach = std::numeric_limits<double>::infinity();
  const Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  // Rays from the vertex into the facet leave through exactly one face not
  // containing the vertex, so the corner solid angle is the sum over those faces.
  for (const auto& face : hull_faces_3d(local)) {
    if (std::find(face.indices.begin(), face.indices.end(), self) != face.indices.end()) continue;
    std::vector<Eigen::Vector3d> polygon;
    for (int i : face.indices) polygon.push_back(local[i]);
    corner.angle += polygon_solid_angle(origin, polygon);
    corner.reach = std::min(corner.reach, polygon_distance(origin, polygon, face.plane.normal.head<3>()));
  }
  return corner;
}

}  // namespace

double PowerLawProfile::perimeter(double volume) const {
  return coefficient * std::pow(volume, exponent);
}

double simplicial_solid_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
  const double la = a.norm();
  const double lb = b.norm();
  const double lc = c.norm();
  const double triple = std::abs(a.dot(b.cross(c)));
  const double denom = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
  return 2.0 * std::atan2(triple, denom);
}

double polygon_solid_angle(const Eigen::Vector3d& apex, const std::vector<Eigen::Vector3d>& polygon) {
  double total = 0.0;
  const Eigen::Vector3d first = polygon[0] - apex;
  for (std::size_t i = 1; i + 1 < polygon.size(); ++i)
    total += simplicial_solid_angle(first, polygon[i] - apex, polygon[i + 1] - apex);
  return total;
}

VertexCone link_volume(const Polytope& polytope, int vertex) {
  const int dim = polytope.ambient_dim();
  if (dim > 4) throw Error(ErrorKind::UnsupportedDimension, "vertex cones need d <= 4");
  if (vertex < 0 || vertex >= polytope.vertex_count()) throw Error(ErrorKind::BadArgument, "vertex out of range");

  VertexCone cone;
  cone.vertex_index = vertex;
  cone.surface_dim = dim - 1;
  cone.incident_facets = polytope.incident_facets(vertex);
  cone.r_max = std::numeric_limits<double>::infinity();
  for (int f : cone.incident_facets) {
    FacetCorner corner;
    if (dim == 2) {
      const auto& seg = polytope.facets()[f];
      const int other = seg[0] == vertex ? seg[1] : seg[0];
      corner.angle = 1.0;
      corner.reach = (polytope.vertices()[other] - polytope.vertices()[vertex]).norm();
    } else if (dim == 3) {
      corner = polygon_corner(polytope, f, vertex);
    } else {
      corner = solid_corner(polytope, f, vertex);
    }
    cone.facet_contributions.push_back(corner.angle);
    cone.link_volume += corner.angle;
    cone.r_max = std::min(cone.r_max, corner.reach);
  }
  return cone;
}

std::vector<VertexCone> vertex_cones(const Polytope& polytope) {
  std::vector<VertexCone> cones;
  cones.reserve(static_cast<std::size_t>(polytope.vertex_count()));
  for (int v = 0; v < polytope.vertex_count(); ++v) cones.push_back(link_volume(polytope, v));
  return cones;
}

PowerLawProfile apex_ball_profile(const VertexCone& cone) {
  const int n = cone.surface_dim;
  const double w = cone.link_volume;
  PowerLawProfile profile;
  if (n == 1) {
    profile.coefficient = 2.0;
    profile.exponent = 0.0;
    profile.valid_volume_max = w * cone.r_max;
    return profile;
  }
  profile.coefficient = std::pow(w, 1.0 / n) * std::pow(static_cast<double>(n), (n - 1.0) / n);
  profile.exponent = (n - 1.0) / n;
  profile.valid_volume_max = w * std::pow(cone.r_max, n) / n;
  return profile;
}

double apex_ball_radius(const VertexCone& cone, double volume) {
  const int n = cone.surface_dim;
  return std::pow(n * volume / cone.link_volume, 1.0 / n);
}

double printed_exponent(int surface_dim) {
  if (surface_dim < 2) return std::numeric_limits<double>::quiet_NaN();
  return (surface_dim - 2.0) / (surface_dim - 1.0);
}

namespace {

int least_link(std::span<const VertexCone> cones) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(cones.size()); ++i) {
    const double slack = 1e-12 * std::max(1.0, cones[best].link_volume);
    if (cones[i].link_volume < cones[best].link_volume - slack) best = i;
  }
  return best;
}

}  // namespace

OptimalVertex optimal_vertex(const Polytope& polytope) {
  const auto cones = vertex_cones(polytope);
  const int best = least_link(cones);
  return {cones[best].vertex_index, apex_ball_profile(cones[best])};
}

BallAllocation single_ball_allocation(double volume, std::span<const VertexCone> cones) {
  if (cones.empty()) throw Error(ErrorKind::BadArgument, "no cones");
  if (!(volume > 0)) throw Error(ErrorKind::BadArgument, "volume must be positive");
  for (const auto& c : cones)
    if (c.surface_dim != cones.front().surface_dim) throw Error(ErrorKind::BadArgument, "cones differ in dimension");
  const int best = least_link(cones);
  const auto profile = apex_ball_profile(cones[best]);
  if (volume > profile.valid_volume_max)
    throw Error(ErrorKind::VolumeTooLarge, "volume exceeds the star-contained ball at the chosen vertex");
  BallAllocation alloc;
  alloc.cone_position = best;
  alloc.vertex = cones[best].vertex_index;
  alloc.volume = volume;
  alloc.radius = apex_ball_radius(cones[best], volume);
  alloc.perimeter = profile.perimeter(volume);
  return alloc;
}

double split_perimeter(std::span<const VertexCone> cones, std::span<const double> volumes) {
  if (cones.size() != volumes.size()) throw Error(ErrorKind::BadArgument, "one volume per cone expected");
  double total = 0.0;
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (volumes[i] > 0) total += apex_ball_profile(cones[i]).perimeter(volumes[i]);
  return total;
}

double deficit_sum(const Polytope& polytope) {
  if (polytope.ambient_dim() != 3) throw Error(ErrorKind::UnsupportedDimension, "angle deficit needs d = 3");
  double total = 0.0;
  for (const auto& cone : vertex_cones(polytope)) total += 2.0 * std::numbers::pi - cone.link_volume;
  return total;
}

double renormalize_link(const VertexCone& cone) {
  return sphere_measure(cone.surface_dim - 1) / cone.link_volume;
}

}  // namespace polyiso
