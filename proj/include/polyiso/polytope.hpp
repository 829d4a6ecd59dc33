#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace polyiso {

using Point = Eigen::VectorXd;

/// Coplanarity / convexity tolerance in coordinate units.
inline constexpr double kGeometryTolerance = 1e-9;

/// Supporting hyperplane {x : normal . x = offset} with unit outward normal.
struct FacetPlane {
  Eigen::VectorXd normal;
  double offset = 0.0;

  double signed_distance(const Point& x) const { return normal.dot(x) - offset; }
};

/// A facet found by hull enumeration: sorted vertex indices plus its plane.
struct HullFacet {
  std::vector<int> indices;
  FacetPlane plane;
};

/// Boundary of a compact convex body in R^d, described by its vertices and
/// facet incidences. Construction validates convexity and facet geometry;
/// instances are immutable afterwards.
///
/// For d = 3 every facet is stored as a counter-clockwise cycle (seen from
/// outside) starting at its smallest vertex index. In other dimensions facets
/// are sorted index sets.
class Polytope {
 public:
  /// Validates a vertex/facet description. Vertices closer than the geometry
  /// tolerance are merged. When d <= 4 the facets are cross-checked against
  /// hull enumeration.
  static Polytope from_facets(std::vector<Point> vertices, std::vector<std::vector<int>> facets,
                              std::string name = {});

  /// Builds the polytope from points in convex position (d <= 4).
  static Polytope from_vertices(std::vector<Point> vertices, std::string name = {});

  int ambient_dim() const { return dim_; }
  int surface_dim() const { return dim_ - 1; }
  const std::string& name() const { return name_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<std::vector<int>>& facets() const { return facets_; }
  const std::vector<FacetPlane>& planes() const { return planes_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int facet_count() const { return static_cast<int>(facets_.size()); }

  /// Facets containing the vertex, in increasing facet order.
  const std::vector<int>& incident_facets(int vertex) const { return vertex_facets_.at(vertex); }

  /// Average of the vertices; strictly interior.
  Point vertex_centroid() const;

  /// Copy mapped by x -> linear * x + shift (re-validated).
  Polytope transformed(const Eigen::MatrixXd& linear, const Point& shift) const;

 private:
  Polytope() = default;

  int dim_ = 0;
  std::string name_;
  std::vector<Point> vertices_;
  std::vector<std::vector<int>> facets_;
  std::vector<FacetPlane> planes_;
  std::vector<std::vector<int>> vertex_facets_;
};

/// Parses a polytope document: {"dim", "vertices", optional "facets", optional "name"}.
Polytope load_polytope(std::string_view document);
Polytope load_polytope_file(const std::filesystem::path& path);

/// Canonical JSON form; facets sorted lexicographically.
std::string serialize(const Polytope& polytope);

/// Facets of the convex hull of points in convex position, d in [2, 4].
/// Each facet is the sorted list of all points on its supporting hyperplane.
std::vector<std::vector<int>> enumerate_facets(const std::vector<Point>& points);

/// Same as enumerate_facets but keeps the outward planes.
std::vector<HullFacet> enumerate_hull_facets(const std::vector<Point>& points);

/// k-dimensional volume of the convex hull of points in R^k, 1 <= k <= 4.
double convex_volume(const std::vector<Point>& points);

/// Orthonormal basis (columns) of the hyperplane orthogonal to a unit normal.
Eigen::MatrixXd hyperplane_basis(const Eigen::VectorXd& normal);

/// Facet vertices expressed in an orthonormal frame of the facet hyperplane,
/// with the given origin.
std::vector<Point> facet_local_coordinates(const Polytope& polytope, int facet, const Point& origin);

/// (d-1)-dimensional measure of one facet.
double facet_measure(const Polytope& polytope, int facet);

/// Sum of the facet measures.
double surface_area(const Polytope& polytope);

/// Orders coplanar 3D points counter-clockwise around `normal`.
std::vector<int> order_polygon(const std::vector<Eigen::Vector3d>& points, std::vector<int> indices,
                               const Eigen::Vector3d& normal);

/// Faces of the hull of 3D points, each ordered counter-clockwise seen from outside.
std::vector<HullFacet> hull_faces_3d(const std::vector<Eigen::Vector3d>& points);

}  // namespace polyiso
