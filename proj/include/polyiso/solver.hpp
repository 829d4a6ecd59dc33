#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "polyiso/mesh.hpp"
#include "polyiso/polytope.hpp"

namespace polyiso {

/// Set of triangles of a surface mesh with its area and cut perimeter
/// (total length of edges with exactly one side in the set).
class Region {
 public:
  Region(const SurfaceMesh& mesh, std::vector<std::uint8_t> members);

  const SurfaceMesh& mesh() const { return *mesh_; }
  const std::vector<std::uint8_t>& members() const { return members_; }
  bool contains(int triangle) const { return members_[static_cast<std::size_t>(triangle)] != 0; }
  double area() const { return area_; }
  double cut_perimeter() const { return perimeter_; }
  int size() const;
  std::vector<int> triangle_indices() const;
  /// Area-weighted centroid of the member triangles (ambient coordinates).
  Eigen::Vector3d centroid() const;

  Region complement() const;

 private:
  const SurfaceMesh* mesh_;
  std::vector<std::uint8_t> members_;
  double area_ = 0.0;
  double perimeter_ = 0.0;
};

/// Geodesic ball of volume V about a polytope vertex, discretized as the
/// triangles (in facets incident to the vertex) whose centroids lie within
/// the apex-ball radius. The mesh must come from subdivide(polytope, m).
Region vertex_ball_region(const Polytope& polytope, const SurfaceMesh& mesh, int vertex, double volume);

/// Triangles that straddle the vertex-ball circle of the given radius.
double straddling_area(const Polytope& polytope, const SurfaceMesh& mesh, int vertex, double radius);

struct SolverConfig {
  std::uint64_t seed = 0;
  int iterations = 200000;
  double initial_temperature = 0.02;
  /// Per-iteration geometric factor applied to the temperature.
  double cooling_rate = 0.99997;
  /// Weight of |area - V| in the annealing energy.
  double area_penalty = 50.0;
  int restarts = 8;
  /// Relative area window for a region to count as feasible.
  double area_tolerance = 0.02;

  /// Cooling factor that takes the temperature down by `ratio` over `iterations`.
  static double cooling_for(int iterations, double ratio = 1e-3);
};

struct SolveResult {
  Region best;
  int restart = 0;
  /// Best feasible perimeter per restart (infinity when a restart found none).
  std::vector<double> restart_perimeters;
};

/// Simulated annealing over boundary-triangle flips minimizing
/// cut_perimeter + mu |area - V|. Restart r seeds its generator with seed + r
/// and starts from a breadth-first blob around a seed triangle: uniformly random
/// for even r, at a random cone point (angle sum != 2 pi) for odd r.
SolveResult minimize_perimeter(const SurfaceMesh& mesh, double volume, const SolverConfig& config);

/// Worst-case ratio of cut length to Euclidean length for straight cuts,
/// 1 / cos(theta_max / 2) maximized over triangles (theta_max = largest angle).
double anisotropy_bound(const SurfaceMesh& mesh);

/// sqrt(2 w_min V): perimeter of the best vertex ball of a 3D polytope.
double continuum_bound(const Polytope& polytope, double volume);

}  // namespace polyiso
