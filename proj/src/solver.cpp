#include "polyiso/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <queue>
#include <random>

#include "polyiso/error.hpp"
#include "polyiso/vertex_cones.hpp"

namespace polyiso {
namespace {

double point_segment_distance(const Eigen::Vector3d& p, const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  const Eigen::Vector3d ab = b - a;
  const double s = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (p - (a + s * ab)).norm();
}

// Distance range from a coplanar point to a triangle.
std::pair<double, double> distance_range(const Eigen::Vector3d& p, const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                                         const Eigen::Vector3d& c) {
  const double far = std::max({(p - a).norm(), (p - b).norm(), (p - c).norm()});
  const Eigen::Vector3d n = (b - a).cross(c - a);
  const bool inside = (b - a).cross(p - a).dot(n) >= 0 && (c - b).cross(p - b).dot(n) >= 0 &&
                      (a - c).cross(p - c).dot(n) >= 0;
  const double near = inside ? 0.0
                             : std::min({point_segment_distance(p, a, b), point_segment_distance(p, b, c),
                                         point_segment_distance(p, c, a)});
  return {near, far};
}

double recompute_perimeter(const SurfaceMesh& mesh, const std::vector<std::uint8_t>& members) {
  double total = 0.0;
  for (const auto& e : mesh.edges()) {
    const bool a = members[static_cast<std::size_t>(e.triangles[0])] != 0;
    const bool b = e.triangles[1] >= 0 && members[static_cast<std::size_t>(e.triangles[1])] != 0;
    if (a != b) total += e.length;
  }
  return total;
}

// Indexable set of edge ids supporting O(1) insert, erase, and uniform sampling.
class EdgeSet {
 public:
  explicit EdgeSet(std::size_t universe) : position_(universe, -1) {}

  void insert(int e) {
    if (position_[e] >= 0) return;
    position_[e] = static_cast<int>(items_.size());
    items_.push_back(e);
  }
  void erase(int e) {
    const int pos = position_[e];
    if (pos < 0) return;
    const int last = items_.back();
    items_[pos] = last;
    position_[last] = pos;
    items_.pop_back();
    position_[e] = -1;
  }
  std::size_t size() const { return items_.size(); }
  int at(std::size_t i) const { return items_[i]; }

 private:
  std::vector<int> items_;
  std::vector<int> position_;
};

// One triangle at each mesh vertex whose angle sum differs from 2 pi.
std::vector<int> cone_point_triangles(const SurfaceMesh& mesh) {
  const auto n = mesh.positions().size();
  std::vector<double> angle(n, 0.0);
  std::vector<int> witness(n, -1);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles()[static_cast<std::size_t>(t)];
    for (int k = 0; k < 3; ++k) {
      const Eigen::Vector3d& p = mesh.positions()[tri[k]];
      const Eigen::Vector3d u = mesh.positions()[tri[(k + 1) % 3]] - p;
      const Eigen::Vector3d w = mesh.positions()[tri[(k + 2) % 3]] - p;
      angle[tri[k]] += std::atan2(u.cross(w).norm(), u.dot(w));
      if (witness[tri[k]] < 0) witness[tri[k]] = t;
    }
  }
  std::vector<int> out;
  for (std::size_t v = 0; v < n; ++v)
    if (witness[v] >= 0 && std::abs(angle[v] - 2.0 * std::numbers::pi) > 1e-9) out.push_back(witness[v]);
  return out;
}

struct RestartOutcome {
  std::vector<std::uint8_t> members;
  double perimeter = std::numeric_limits<double>::infinity();
};

RestartOutcome anneal(const SurfaceMesh& mesh, const std::vector<int>& cone_triangles, double target,
                      const SolverConfig& config, int restart) {
  std::mt19937_64 rng(config.seed + static_cast<std::uint64_t>(restart));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& edges = mesh.edges();
  const auto& tri_edges = mesh.triangle_edges();
  const auto& areas = mesh.triangle_areas();
  const int triangles = mesh.triangle_count();

  auto other_side = [&](int e, int t) {
    const auto& tr = edges[e].triangles;
    return tr[0] == t ? tr[1] : tr[0];
  };

  // Breadth-first blob around the seed triangle. Odd restarts seed at a cone
  // point so both vertex and flat competitors get explored.
  std::vector<std::uint8_t> member(static_cast<std::size_t>(triangles), 0);
  double area = 0.0;
  int count = 0;
  {
    int start = std::uniform_int_distribution<int>(0, triangles - 1)(rng);
    if (restart % 2 == 1 && !cone_triangles.empty())
      start = cone_triangles[std::uniform_int_distribution<std::size_t>(0, cone_triangles.size() - 1)(rng)];
    std::queue<int> frontier;
    frontier.push(start);
    member[frontier.front()] = 1;
    while (!frontier.empty() && area < target) {
      const int t = frontier.front();
      frontier.pop();
      area += areas[t];
      ++count;
      for (int e : tri_edges[t]) {
        const int o = other_side(e, t);
        if (o >= 0 && !member[o]) {
          member[o] = 1;
          frontier.push(o);
        }
      }
    }
    while (!frontier.empty()) {
      member[frontier.front()] = 0;
      frontier.pop();
    }
  }

  EdgeSet boundary(edges.size());
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    const bool a = member[edges[e].triangles[0]] != 0;
    const bool b = edges[e].triangles[1] >= 0 && member[edges[e].triangles[1]] != 0;
    if (a != b) boundary.insert(e);
  }
  double perimeter = recompute_perimeter(mesh, member);

  const double mu = config.area_penalty;
  const double window = config.area_tolerance * target;
  RestartOutcome best;
  auto consider = [&]() {
    if (std::abs(area - target) <= window && perimeter < best.perimeter - 1e-12) {
      best.perimeter = perimeter;
      best.members = member;
    }
  };
  consider();

  double temperature = config.initial_temperature;
  for (int it = 0; it < config.iterations; ++it, temperature *= config.cooling_rate) {
    if (boundary.size() == 0) break;
    const int e = boundary.at(static_cast<std::size_t>(unit(rng) * static_cast<double>(boundary.size())) %
                              boundary.size());
    const int side = unit(rng) < 0.5 ? 0 : 1;
    const int t = edges[e].triangles[side] >= 0 ? edges[e].triangles[side] : edges[e].triangles[0];
    const bool inside = member[t] != 0;
    if (inside && count == 1) continue;

    double d_perimeter = 0.0;
    for (int f : tri_edges[t]) {
      const int o = other_side(f, t);
      const bool other_in = o >= 0 && member[o] != 0;
      const double sign = (inside == other_in) ? 1.0 : -1.0;  // flipping t toggles this edge
      d_perimeter += sign * edges[f].length;
    }
    const double new_area = inside ? area - areas[t] : area + areas[t];
    const double d_energy = d_perimeter + mu * (std::abs(new_area - target) - std::abs(area - target));
    if (d_energy > 0 && unit(rng) >= std::exp(-d_energy / temperature)) continue;

    member[t] = inside ? 0 : 1;
    area = new_area;
    count += inside ? -1 : 1;
    perimeter += d_perimeter;
    for (int f : tri_edges[t]) {
      const int o = other_side(f, t);
      const bool other_in = o >= 0 && member[o] != 0;
      if ((member[t] != 0) != other_in) boundary.insert(f);
      else boundary.erase(f);
    }
    consider();
  }
  if (!best.members.empty()) best.perimeter = recompute_perimeter(mesh, best.members);
  return best;
}

}  // namespace

Region::Region(const SurfaceMesh& mesh, std::vector<std::uint8_t> members) : mesh_(&mesh), members_(std::move(members)) {
  if (static_cast<int>(members_.size()) != mesh.triangle_count())
    throw Error(ErrorKind::BadArgument, "membership size differs from triangle count");
  for (int t = 0; t < mesh.triangle_count(); ++t)
    if (members_[static_cast<std::size_t>(t)]) area_ += mesh.triangle_areas()[static_cast<std::size_t>(t)];
  perimeter_ = recompute_perimeter(mesh, members_);
}

int Region::size() const {
  return static_cast<int>(std::count_if(members_.begin(), members_.end(), [](std::uint8_t m) { return m != 0; }));
}

std::vector<int> Region::triangle_indices() const {
  std::vector<int> out;
  for (std::size_t t = 0; t < members_.size(); ++t)
    if (members_[t]) out.push_back(static_cast<int>(t));
  return out;
}

Eigen::Vector3d Region::centroid() const {
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  double weight = 0.0;
  for (int t = 0; t < mesh_->triangle_count(); ++t) {
    if (!contains(t)) continue;
    const double a = mesh_->triangle_areas()[static_cast<std::size_t>(t)];
    sum += a * mesh_->triangle_centroid(t);
    weight += a;
  }
  return weight > 0 ? Eigen::Vector3d(sum / weight) : Eigen::Vector3d(sum);
}

Region Region::complement() const {
  std::vector<std::uint8_t> flipped(members_.size());
  for (std::size_t t = 0; t < members_.size(); ++t) flipped[t] = members_[t] ? 0 : 1;
  return Region(*mesh_, std::move(flipped));
}

Region vertex_ball_region(const Polytope& polytope, const SurfaceMesh& mesh, int vertex, double volume) {
  if (polytope.ambient_dim() != 3) throw Error(ErrorKind::UnsupportedDimension, "vertex balls on meshes need d = 3");
  const VertexCone cone = link_volume(polytope, vertex);
  if (!(volume > 0)) throw Error(ErrorKind::BadArgument, "volume must be positive");
  if (volume > apex_ball_profile(cone).valid_volume_max)
    throw Error(ErrorKind::VolumeTooLarge, "ball leaves the vertex star");
  const double radius = apex_ball_radius(cone, volume);
  const Eigen::Vector3d apex = polytope.vertices()[vertex].head<3>();
  const auto& incident = cone.incident_facets;
  std::vector<std::uint8_t> members(static_cast<std::size_t>(mesh.triangle_count()), 0);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const int f = mesh.facet_of()[static_cast<std::size_t>(t)];
    if (std::find(incident.begin(), incident.end(), f) == incident.end()) continue;
    // Inside an incident facet the geodesic distance to the vertex is the planar one.
    if ((mesh.triangle_centroid(t) - apex).norm() < radius) members[static_cast<std::size_t>(t)] = 1;
  }
  return Region(mesh, std::move(members));
}

double straddling_area(const Polytope& polytope, const SurfaceMesh& mesh, int vertex, double radius) {
  const auto& incident = polytope.incident_facets(vertex);
  const Eigen::Vector3d apex = polytope.vertices()[vertex].head<3>();
  double total = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const int f = mesh.facet_of()[static_cast<std::size_t>(t)];
    if (std::find(incident.begin(), incident.end(), f) == incident.end()) continue;
    const auto& tri = mesh.triangles()[static_cast<std::size_t>(t)];
    const auto [near, far] =
        distance_range(apex, mesh.positions()[tri[0]], mesh.positions()[tri[1]], mesh.positions()[tri[2]]);
    if (near < radius && far > radius) total += mesh.triangle_areas()[static_cast<std::size_t>(t)];
  }
  return total;
}

double SolverConfig::cooling_for(int iterations, double ratio) {
  return std::pow(ratio, 1.0 / std::max(1, iterations));
}

SolveResult minimize_perimeter(const SurfaceMesh& mesh, double volume, const SolverConfig& config) {
  const double total = mesh.total_area();
  if (!(volume > 0) || !(volume < total)) throw Error(ErrorKind::VolumeOutOfRange, "target area outside (0, total)");
  if (config.iterations < 1 || config.restarts < 1 || !(config.initial_temperature > 0) ||
      !(config.cooling_rate > 0) || !(config.area_penalty > 0) || !(config.area_tolerance > 0))
    throw Error(ErrorKind::BadArgument, "solver configuration must be positive");

  const std::vector<int> cones = cone_point_triangles(mesh);
  std::vector<std::future<RestartOutcome>> jobs;
  for (int r = 0; r < config.restarts; ++r)
    jobs.push_back(
        std::async(std::launch::async, anneal, std::cref(mesh), std::cref(cones), volume, std::cref(config), r));

  std::vector<RestartOutcome> outcomes;
  for (auto& job : jobs) outcomes.push_back(job.get());

  int winner = -1;
  std::vector<double> perimeters;
  for (int r = 0; r < config.restarts; ++r) {
    perimeters.push_back(outcomes[r].perimeter);
    if (outcomes[r].members.empty()) continue;
    if (winner < 0 || outcomes[r].perimeter < outcomes[winner].perimeter) winner = r;
  }
  if (winner < 0)
    throw Error(ErrorKind::NoFeasibleRegion, "no restart met the area window; raise the penalty or iterations");
  return SolveResult{Region(mesh, std::move(outcomes[winner].members)), winner, std::move(perimeters)};
}

double anisotropy_bound(const SurfaceMesh& mesh) {
  double worst = 1.0;
  for (const auto& tri : mesh.triangles()) {
    double largest = 0.0;
    for (int k = 0; k < 3; ++k) {
      const Eigen::Vector3d& p = mesh.positions()[tri[k]];
      const Eigen::Vector3d u = mesh.positions()[tri[(k + 1) % 3]] - p;
      const Eigen::Vector3d w = mesh.positions()[tri[(k + 2) % 3]] - p;
      largest = std::max(largest, std::atan2(u.cross(w).norm(), u.dot(w)));
    }
    worst = std::max(worst, 1.0 / std::cos(0.5 * largest));
  }
  return worst;
}

double continuum_bound(const Polytope& polytope, double volume) {
  if (polytope.ambient_dim() != 3) throw Error(ErrorKind::UnsupportedDimension, "continuum bound needs d = 3");
  double least = std::numeric_limits<double>::infinity();
  for (const auto& cone : vertex_cones(polytope)) least = std::min(least, cone.link_volume);
  return std::sqrt(2.0 * least * volume);
}

}  // namespace polyiso
