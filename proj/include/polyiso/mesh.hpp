#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "polyiso/polytope.hpp"

namespace polyiso {

struct MeshEdge {
  std::array<int, 2> vertices{};
  double length = 0.0;
  // Adjacent triangles; the second entry is -1 on an open boundary.
  std::array<int, 2> triangles{-1, -1};
};

/// Triangulated surface in R^3 with edge adjacency and intrinsic edge lengths.
class SurfaceMesh {
 public:
  SurfaceMesh(std::vector<Eigen::Vector3d> positions, std::vector<std::array<int, 3>> triangles,
              std::vector<int> facet_of, int subdivision_level = 0);

  const std::vector<Eigen::Vector3d>& positions() const { return positions_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<int>& facet_of() const { return facet_of_; }
  const std::vector<MeshEdge>& edges() const { return edges_; }
  /// Edge indices of each triangle, edge k opposite to corner k.
  const std::vector<std::array<int, 3>>& triangle_edges() const { return triangle_edges_; }
  const std::vector<double>& triangle_areas() const { return areas_; }
  int subdivision_level() const { return level_; }

  int triangle_count() const { return static_cast<int>(triangles_.size()); }
  double total_area() const;
  double max_edge_length() const;
  Eigen::Vector3d triangle_centroid(int t) const;

  /// Every edge has exactly two incident triangles.
  bool is_closed() const;

 private:
  std::vector<Eigen::Vector3d> positions_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<int> facet_of_;
  std::vector<MeshEdge> edges_;
  std::vector<std::array<int, 3>> triangle_edges_;
  std::vector<double> areas_;
  int level_ = 0;
  bool manifold_ = true;
};

/// Fan-triangulates each facet of a 3D polytope from its centroid, then applies
/// `level` rounds of 4-to-1 midpoint subdivision. Polytope vertex i keeps mesh
/// index i. Requires d = 3 and 0 <= level <= 8.
SurfaceMesh subdivide(const Polytope& polytope, int level);

/// Applies `rounds` of 4-to-1 midpoint subdivision to an arbitrary mesh.
SurfaceMesh refine(const SurfaceMesh& mesh, int rounds);

}  // namespace polyiso
