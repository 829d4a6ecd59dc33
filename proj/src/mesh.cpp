#include "polyiso/mesh.hpp"

#include <cstdint>
#include <unordered_map>

#include "polyiso/error.hpp"

namespace polyiso {
namespace {

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

SurfaceMesh::SurfaceMesh(std::vector<Eigen::Vector3d> positions, std::vector<std::array<int, 3>> triangles,
                         std::vector<int> facet_of, int subdivision_level)
    : positions_(std::move(positions)),
      triangles_(std::move(triangles)),
      facet_of_(std::move(facet_of)),
      level_(subdivision_level) {
  if (facet_of_.size() != triangles_.size()) throw Error(ErrorKind::BadArgument, "facet_of size mismatch");
  std::unordered_map<std::uint64_t, int> lookup;
  lookup.reserve(triangles_.size() * 2);
  triangle_edges_.resize(triangles_.size());
  areas_.resize(triangles_.size());
  for (int t = 0; t < triangle_count(); ++t) {
    const auto& tri = triangles_[t];
    const Eigen::Vector3d& a = positions_[tri[0]];
    const Eigen::Vector3d& b = positions_[tri[1]];
    const Eigen::Vector3d& c = positions_[tri[2]];
    areas_[t] = 0.5 * (b - a).cross(c - a).norm();
    for (int k = 0; k < 3; ++k) {
      const int u = tri[(k + 1) % 3];
      const int v = tri[(k + 2) % 3];
      auto [it, inserted] = lookup.try_emplace(edge_key(u, v), static_cast<int>(edges_.size()));
      if (inserted) {
        MeshEdge e;
        e.vertices = {std::min(u, v), std::max(u, v)};
        e.length = (positions_[u] - positions_[v]).norm();
        e.triangles = {t, -1};
        edges_.push_back(e);
      } else {
        auto& e = edges_[it->second];
        if (e.triangles[1] != -1) manifold_ = false;
        e.triangles[1] = t;
      }
      triangle_edges_[t][k] = it->second;
    }
  }
}

double SurfaceMesh::total_area() const {
  double total = 0.0;
  for (double a : areas_) total += a;
  return total;
}

double SurfaceMesh::max_edge_length() const {
  double longest = 0.0;
  for (const auto& e : edges_) longest = std::max(longest, e.length);
  return longest;
}

Eigen::Vector3d SurfaceMesh::triangle_centroid(int t) const {
  const auto& tri = triangles_[t];
  return (positions_[tri[0]] + positions_[tri[1]] + positions_[tri[2]]) / 3.0;
}

bool SurfaceMesh::is_closed() const {
  if (!manifold_) return false;
  for (const auto& e : edges_)
    if (e.triangles[1] < 0) return false;
  return true;
}

SurfaceMesh refine(const SurfaceMesh& mesh, int rounds) {
  std::vector<Eigen::Vector3d> positions = mesh.positions();
  std::vector<std::array<int, 3>> triangles = mesh.triangles();
  std::vector<int> facet_of = mesh.facet_of();
  for (int round = 0; round < rounds; ++round) {
    std::unordered_map<std::uint64_t, int> midpoint;
    midpoint.reserve(triangles.size() * 2);
    auto mid = [&](int a, int b) {
      auto [it, inserted] = midpoint.try_emplace(edge_key(a, b), static_cast<int>(positions.size()));
      if (inserted) positions.push_back(0.5 * (positions[a] + positions[b]));
      return it->second;
    };
    std::vector<std::array<int, 3>> next;
    std::vector<int> next_facet;
    next.reserve(triangles.size() * 4);
    next_facet.reserve(triangles.size() * 4);
    for (std::size_t t = 0; t < triangles.size(); ++t) {
      const auto [a, b, c] = triangles[t];
      const int ab = mid(a, b);
      const int bc = mid(b, c);
      const int ca = mid(c, a);
      next.push_back({a, ab, ca});
      next.push_back({ab, b, bc});
      next.push_back({ca, bc, c});
      next.push_back({ab, bc, ca});
      for (int k = 0; k < 4; ++k) next_facet.push_back(facet_of[t]);
    }
    triangles = std::move(next);
    facet_of = std::move(next_facet);
  }
  return SurfaceMesh(std::move(positions), std::move(triangles), std::move(facet_of),
                     mesh.subdivision_level() + rounds);
}

SurfaceMesh subdivide(const Polytope& polytope, int level) {
  if (polytope.ambient_dim() != 3) throw Error(ErrorKind::UnsupportedDimension, "subdivide needs d = 3");
  if (level < 0 || level > 8) throw Error(ErrorKind::BadArgument, "subdivision level must be in [0, 8]");
  std::vector<Eigen::Vector3d> positions;
  for (const auto& v : polytope.vertices()) positions.emplace_back(v.head<3>());
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> facet_of;
  for (int f = 0; f < polytope.facet_count(); ++f) {
    const auto& cycle = polytope.facets()[f];
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
    for (int v : cycle) center += positions[v];
    center /= static_cast<double>(cycle.size());
    const int c = static_cast<int>(positions.size());
    positions.push_back(center);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      triangles.push_back({c, cycle[i], cycle[(i + 1) % cycle.size()]});
      facet_of.push_back(f);
    }
  }
  return refine(SurfaceMesh(std::move(positions), std::move(triangles), std::move(facet_of), 0), level);
}

}  // namespace polyiso
