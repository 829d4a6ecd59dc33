#include "polyiso/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"

#include "polyiso/error.hpp"

namespace polyiso {
namespace {

constexpr double kTol = kGeometryTolerance;

int affine_rank(const std::vector<Point>& points) {
  if (points.empty()) return -1;
  const auto dim = points.front().size();
  Eigen::MatrixXd diffs(static_cast<Eigen::Index>(points.size()), dim);
  for (std::size_t i = 0; i < points.size(); ++i) diffs.row(static_cast<Eigen::Index>(i)) = (points[i] - points[0]).transpose();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(diffs);
  lu.setThreshold(1e-12);
  return static_cast<int>(lu.rank());
}

// Advances a strictly increasing index combination; false when exhausted.
bool next_combination(std::vector<int>& comb, int n) {
  const int k = static_cast<int>(comb.size());
  int i = k - 1;
  while (i >= 0 && comb[i] == n - k + i) --i;
  if (i < 0) return false;
  ++comb[i];
  for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  return true;
}

// Hyperplane through d affinely independent points in R^d, or nullopt.
std::optional<FacetPlane> plane_through(const std::vector<Point>& points, const std::vector<int>& subset) {
  const auto dim = points[subset[0]].size();
  Eigen::MatrixXd diffs(static_cast<Eigen::Index>(subset.size() - 1), dim);
  for (std::size_t i = 1; i < subset.size(); ++i)
    diffs.row(static_cast<Eigen::Index>(i - 1)) = (points[subset[i]] - points[subset[0]]).transpose();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(diffs);
  lu.setThreshold(1e-10);
  if (lu.rank() != dim - 1) return std::nullopt;
  Eigen::MatrixXd kernel = lu.kernel();
  if (kernel.cols() != 1) return std::nullopt;
  FacetPlane plane;
  plane.normal = kernel.col(0).normalized();
  plane.offset = plane.normal.dot(points[subset[0]]);
  return plane;
}

FacetPlane best_fit_plane(const std::vector<Point>& points, const std::vector<int>& facet, int dim) {
  if (static_cast<int>(facet.size()) < dim)
    throw Error(ErrorKind::DegenerateFacet, "facet has fewer than d vertices");
  Point mean = Point::Zero(dim);
  for (int v : facet) mean += points[v];
  mean /= static_cast<double>(facet.size());
  Eigen::MatrixXd centered(static_cast<Eigen::Index>(facet.size()), dim);
  for (std::size_t i = 0; i < facet.size(); ++i)
    centered.row(static_cast<Eigen::Index>(i)) = (points[facet[i]] - mean).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  if (dim >= 2 && sigma(dim - 2) <= kTol)
    throw Error(ErrorKind::DegenerateFacet, "facet is not (d-1)-dimensional");
  FacetPlane plane;
  plane.normal = svd.matrixV().col(dim - 1);
  plane.offset = plane.normal.dot(mean);
  return plane;
}

std::vector<Point> merge_duplicates(std::vector<Point> vertices, std::vector<std::vector<int>>& facets) {
  std::vector<Point> kept;
  std::vector<int> remap(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    int found = -1;
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if ((kept[j] - vertices[i]).norm() < kTol) {
        found = static_cast<int>(j);
        break;
      }
    }
    if (found < 0) {
      found = static_cast<int>(kept.size());
      kept.push_back(std::move(vertices[i]));
    }
    remap[i] = found;
  }
  for (auto& facet : facets) {
    std::vector<int> mapped;
    for (int v : facet) {
      const int m = remap[v];
      if (std::find(mapped.begin(), mapped.end(), m) == mapped.end()) mapped.push_back(m);
    }
    facet = std::move(mapped);
  }
  return kept;
}

std::vector<int> canonical_cycle(std::vector<int> cycle) {
  auto smallest = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), smallest, cycle.end());
  return cycle;
}

}  // namespace

Eigen::MatrixXd hyperplane_basis(const Eigen::VectorXd& normal) {
  const auto dim = normal.size();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(normal);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
  return q.rightCols(dim - 1);
}

std::vector<HullFacet> enumerate_hull_facets(const std::vector<Point>& points) {
  if (points.empty()) throw Error(ErrorKind::NotFullDimensional, "no points");
  const int dim = static_cast<int>(points.front().size());
  if (dim > 4) throw Error(ErrorKind::DimensionTooHigh, "facet enumeration supports d <= 4");
  if (dim < 2) throw Error(ErrorKind::UnsupportedDimension, "facet enumeration needs d >= 2");
  for (const auto& p : points)
    if (p.size() != dim) throw Error(ErrorKind::BadArgument, "mixed point dimensions");
  const int count = static_cast<int>(points.size());
  if (count < dim + 1 || affine_rank(points) < dim)
    throw Error(ErrorKind::NotFullDimensional, "points do not span R^d");

  std::set<std::vector<int>> seen;
  std::vector<HullFacet> out;
  std::vector<int> comb(dim);
  std::iota(comb.begin(), comb.end(), 0);
  do {
    auto plane = plane_through(points, comb);
    if (!plane) continue;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<int> on_plane;
    for (int i = 0; i < count; ++i) {
      const double s = plane->signed_distance(points[i]);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
      if (std::abs(s) <= kTol) on_plane.push_back(i);
    }
    if (hi > kTol && lo < -kTol) continue;
    if (hi > kTol) {
      plane->normal = -plane->normal;
      plane->offset = -plane->offset;
    }
    if (seen.insert(on_plane).second) out.push_back({std::move(on_plane), *plane});
  } while (next_combination(comb, count));
  std::sort(out.begin(), out.end(), [](const HullFacet& a, const HullFacet& b) { return a.indices < b.indices; });
  return out;
}

std::vector<std::vector<int>> enumerate_facets(const std::vector<Point>& points) {
  std::vector<std::vector<int>> facets;
  for (auto& f : enumerate_hull_facets(points)) facets.push_back(std::move(f.indices));
  return facets;
}

double convex_volume(const std::vector<Point>& points) {
  if (points.empty()) return 0.0;
  const int dim = static_cast<int>(points.front().size());
  if (dim == 1) {
    double lo = points.front()(0);
    double hi = lo;
    for (const auto& p : points) {
      lo = std::min(lo, p(0));
      hi = std::max(hi, p(0));
    }
    return hi - lo;
  }
  if (static_cast<int>(points.size()) < dim + 1 || affine_rank(points) < dim) return 0.0;
  Point center = Point::Zero(dim);
  for (const auto& p : points) center += p;
  center /= static_cast<double>(points.size());

  // Pyramids from the centroid over each facet.
  double volume = 0.0;
  for (const auto& facet : enumerate_hull_facets(points)) {
    const Eigen::MatrixXd basis = hyperplane_basis(facet.plane.normal);
    std::vector<Point> local;
    local.reserve(facet.indices.size());
    for (int i : facet.indices) local.push_back(basis.transpose() * (points[i] - points[facet.indices[0]]));
    const double height = -facet.plane.signed_distance(center);
    volume += convex_volume(local) * height / dim;
  }
  return volume;
}

std::vector<int> order_polygon(const std::vector<Eigen::Vector3d>& points, std::vector<int> indices,
                               const Eigen::Vector3d& normal) {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  for (int i : indices) center += points[i];
  center /= static_cast<double>(indices.size());
  const Eigen::Vector3d n = normal.normalized();
  Eigen::Vector3d e1 = (points[indices[0]] - center);
  e1 -= n * n.dot(e1);
  e1.normalize();
  const Eigen::Vector3d e2 = n.cross(e1);
  std::vector<std::pair<double, int>> keyed;
  for (int i : indices) {
    const Eigen::Vector3d r = points[i] - center;
    keyed.emplace_back(std::atan2(r.dot(e2), r.dot(e1)), i);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> ordered;
  for (const auto& [angle, i] : keyed) ordered.push_back(i);
  return ordered;
}

std::vector<HullFacet> hull_faces_3d(const std::vector<Eigen::Vector3d>& points) {
  std::vector<Point> generic(points.begin(), points.end());
  auto faces = enumerate_hull_facets(generic);
  for (auto& face : faces) {
    face.indices = canonical_cycle(order_polygon(points, face.indices, face.plane.normal.head<3>()));
  }
  return faces;
}

Polytope Polytope::from_facets(std::vector<Point> vertices, std::vector<std::vector<int>> facets, std::string name) {
  if (vertices.empty()) throw Error(ErrorKind::BadDocument, "no vertices");
  const int dim = static_cast<int>(vertices.front().size());
  if (dim < 2) throw Error(ErrorKind::UnsupportedDimension, "ambient dimension must be >= 2");
  for (const auto& v : vertices) {
    if (v.size() != dim) throw Error(ErrorKind::BadDocument, "vertex has wrong dimension");
    if (!v.allFinite()) throw Error(ErrorKind::BadDocument, "non-finite coordinate");
  }
  for (const auto& f : facets)
    for (int v : f)
      if (v < 0 || v >= static_cast<int>(vertices.size()))
        throw Error(ErrorKind::BadDocument, "facet index out of range");

  vertices = merge_duplicates(std::move(vertices), facets);
  if (static_cast<int>(vertices.size()) < dim + 1 || affine_rank(vertices) < dim)
    throw Error(ErrorKind::NotFullDimensional, "vertices do not span R^d");

  Polytope p;
  p.dim_ = dim;
  p.name_ = std::move(name);
  p.vertices_ = std::move(vertices);
  const Point centroid = p.vertex_centroid();

  std::vector<FacetPlane> planes;
  for (const auto& f : facets) {
    FacetPlane plane = best_fit_plane(p.vertices_, f, dim);
    if (plane.signed_distance(centroid) > 0) {
      plane.normal = -plane.normal;
      plane.offset = -plane.offset;
    }
    for (std::size_t v = 0; v < p.vertices_.size(); ++v) {
      if (plane.signed_distance(p.vertices_[v]) > kTol)
        throw Error(ErrorKind::NonConvex, "vertex " + std::to_string(v) + " violates a facet plane");
    }
    for (int v : f) {
      if (std::abs(plane.signed_distance(p.vertices_[v])) > kTol)
        throw Error(ErrorKind::DegenerateFacet, "facet vertices are not coplanar");
    }
    planes.push_back(plane);
  }

  std::set<std::vector<int>> distinct;
  for (const auto& f : facets) {
    auto key = f;
    std::sort(key.begin(), key.end());
    if (!distinct.insert(key).second) throw Error(ErrorKind::BadDocument, "duplicate facet");
  }

  if (dim <= 4) {
    std::set<std::vector<int>> hull;
    for (auto& f : enumerate_facets(p.vertices_)) hull.insert(std::move(f));
    if (hull != distinct) throw Error(ErrorKind::BadDocument, "facets disagree with the convex hull of the vertices");
  }

  // Store facets in canonical order, with cycles for d = 3.
  std::vector<std::size_t> order(facets.size());
  for (std::size_t i = 0; i < facets.size(); ++i) {
    if (dim == 3) {
      std::vector<Eigen::Vector3d> pts;
      for (const auto& v : p.vertices_) pts.emplace_back(v.head<3>());
      facets[i] = canonical_cycle(order_polygon(pts, facets[i], planes[i].normal.head<3>()));
    } else {
      std::sort(facets[i].begin(), facets[i].end());
    }
  }
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return facets[a] < facets[b]; });
  for (std::size_t i : order) {
    p.facets_.push_back(facets[i]);
    p.planes_.push_back(planes[i]);
  }

  p.vertex_facets_.assign(p.vertices_.size(), {});
  for (int f = 0; f < p.facet_count(); ++f)
    for (int v : p.facets_[f]) p.vertex_facets_[v].push_back(f);
  for (std::size_t v = 0; v < p.vertices_.size(); ++v) {
    if (static_cast<int>(p.vertex_facets_[v].size()) < dim)
      throw Error(ErrorKind::BadDocument, "vertex " + std::to_string(v) + " lies on fewer than d facets");
  }
  return p;
}

Polytope Polytope::from_vertices(std::vector<Point> vertices, std::string name) {
  std::vector<std::vector<int>> none;
  vertices = merge_duplicates(std::move(vertices), none);
  auto facets = enumerate_facets(vertices);
  return from_facets(std::move(vertices), std::move(facets), std::move(name));
}

Point Polytope::vertex_centroid() const {
  Point c = Point::Zero(dim_);
  for (const auto& v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

Polytope Polytope::transformed(const Eigen::MatrixXd& linear, const Point& shift) const {
  std::vector<Point> moved;
  moved.reserve(vertices_.size());
  for (const auto& v : vertices_) moved.push_back(linear * v + shift);
  return from_facets(std::move(moved), facets_, name_);
}

Polytope load_polytope(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadDocument, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::BadDocument, "document must be an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer())
    throw Error(ErrorKind::BadDocument, "missing integer field 'dim'");
  const int dim = doc["dim"].get<int>();
  if (dim < 2) throw Error(ErrorKind::BadDocument, "'dim' must be >= 2");
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw Error(ErrorKind::BadDocument, "missing array field 'vertices'");

  std::vector<Point> vertices;
  for (const auto& row : doc["vertices"]) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw Error(ErrorKind::BadDocument, "each vertex needs 'dim' coordinates");
    Point p(dim);
    for (int i = 0; i < dim; ++i) {
      if (!row[i].is_number()) throw Error(ErrorKind::BadDocument, "coordinates must be numbers");
      p(i) = row[i].get<double>();
    }
    if (!p.allFinite()) throw Error(ErrorKind::BadDocument, "non-finite coordinate");
    vertices.push_back(std::move(p));
  }

  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw Error(ErrorKind::BadDocument, "'name' must be a string");
    name = doc["name"].get<std::string>();
  }

  if (!doc.contains("facets")) return Polytope::from_vertices(std::move(vertices), std::move(name));

  if (!doc["facets"].is_array()) throw Error(ErrorKind::BadDocument, "'facets' must be an array");
  std::vector<std::vector<int>> facets;
  for (const auto& row : doc["facets"]) {
    if (!row.is_array()) throw Error(ErrorKind::BadDocument, "each facet must be an index array");
    std::vector<int> facet;
    for (const auto& idx : row) {
      if (!idx.is_number_integer()) throw Error(ErrorKind::BadDocument, "facet indices must be integers");
      facet.push_back(idx.get<int>());
    }
    facets.push_back(std::move(facet));
  }
  return Polytope::from_facets(std::move(vertices), std::move(facets), std::move(name));
}

Polytope load_polytope_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadDocument, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_polytope(buffer.str());
}

std::string serialize(const Polytope& polytope) {
  nlohmann::ordered_json doc;
  if (!polytope.name().empty()) doc["name"] = polytope.name();
  doc["dim"] = polytope.ambient_dim();
  auto verts = nlohmann::ordered_json::array();
  for (const auto& v : polytope.vertices()) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(v(i));
    verts.push_back(row);
  }
  doc["vertices"] = verts;
  doc["facets"] = polytope.facets();
  return doc.dump();
}

std::vector<Point> facet_local_coordinates(const Polytope& polytope, int facet, const Point& origin) {
  const Eigen::MatrixXd basis = hyperplane_basis(polytope.planes()[facet].normal);
  std::vector<Point> local;
  for (int v : polytope.facets()[facet]) local.push_back(basis.transpose() * (polytope.vertices()[v] - origin));
  return local;
}

double facet_measure(const Polytope& polytope, int facet) {
  const Point& anchor = polytope.vertices()[polytope.facets()[facet].front()];
  return convex_volume(facet_local_coordinates(polytope, facet, anchor));
}

double surface_area(const Polytope& polytope) {
  double total = 0.0;
  for (int f = 0; f < polytope.facet_count(); ++f) total += facet_measure(polytope, f);
  return total;
}

}  // namespace polyiso
