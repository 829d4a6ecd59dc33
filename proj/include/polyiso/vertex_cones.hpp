#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "polyiso/polytope.hpp"

namespace polyiso {

/// Intrinsic tangent cone of the polytope boundary at a vertex.
///
/// The link is the set of unit tangent directions at the vertex, a spherical
/// polytope glued from one sector per incident facet. Its total measure
/// `link_volume` is the sum of the facet angles (n = 2), of the facet solid
/// angles (n = 3), or the counting measure 2 (n = 1).
struct VertexCone {
  int vertex_index = 0;
  int surface_dim = 0;
  double link_volume = 0.0;
  std::vector<int> incident_facets;
  std::vector<double> facet_contributions;
  /// Radius below which the geodesic ball stays inside the vertex star.
  double r_max = 0.0;
};

/// A = c V^t, valid on (0, valid_volume_max].
struct PowerLawProfile {
  double coefficient = 0.0;
  double exponent = 0.0;
  double valid_volume_max = 0.0;

  double perimeter(double volume) const;
};

VertexCone link_volume(const Polytope& polytope, int vertex);
std::vector<VertexCone> vertex_cones(const Polytope& polytope);

/// Cone ball profile from V(r) = w r^n / n and A(r) = w r^(n-1).
PowerLawProfile apex_ball_profile(const VertexCone& cone);

/// Radius of the apex ball enclosing the given volume.
double apex_ball_radius(const VertexCone& cone, double volume);

/// (n-2)/(n-1): the exponent as it appears in print for the single-ball step.
/// Reported next to the dimension-consistent (n-1)/n; never used for evaluation.
double printed_exponent(int surface_dim);

struct OptimalVertex {
  int vertex = 0;
  PowerLawProfile profile;
};

/// Vertex of least link volume (lowest index among ties).
OptimalVertex optimal_vertex(const Polytope& polytope);

struct BallAllocation {
  /// Position of the chosen cone in the input list.
  int cone_position = 0;
  int vertex = 0;
  double volume = 0.0;
  double radius = 0.0;
  double perimeter = 0.0;
};

/// Places the whole volume in one apex ball at the least-link cone.
BallAllocation single_ball_allocation(double volume, std::span<const VertexCone> cones);

/// Total perimeter of separate apex balls with the given volumes.
double split_perimeter(std::span<const VertexCone> cones, std::span<const double> volumes);

/// Sum over vertices of 2 pi - w (d = 3).
double deficit_sum(const Polytope& polytope);

/// Constant density factor that rescales the link to the measure of the unit (n-1)-sphere.
double renormalize_link(const VertexCone& cone);

/// Solid angle of the simplicial cone spanned by three vectors.
double simplicial_solid_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c);

/// Solid angle at `apex` subtended by a convex polygon given in order.
double polygon_solid_angle(const Eigen::Vector3d& apex, const std::vector<Eigen::Vector3d>& polygon);

}  // namespace polyiso
