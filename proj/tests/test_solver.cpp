#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "polyiso/error.hpp"
#include "polyiso/mesh.hpp"
#include "polyiso/polytope.hpp"
#include "polyiso/solver.hpp"
#include "polyiso/vertex_cones.hpp"

using namespace polyiso;

namespace {

constexpr double pi = std::numbers::pi;

Polytope load(const std::string& name) { return load_polytope_file(std::string(POLYISO_DATA_DIR) + "/" + name); }

// Icosahedron faces taken directly as triangles: every triangle is equilateral.
SurfaceMesh equilateral_mesh() {
  const Polytope ico = load("icosahedron.json");
  std::vector<Eigen::Vector3d> positions;
  for (const auto& v : ico.vertices()) positions.emplace_back(v.head<3>());
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> facet_of;
  for (std::size_t f = 0; f < ico.facets().size(); ++f) {
    const auto& face = ico.facets()[f];
    REQUIRE(face.size() == 3);
    triangles.push_back({face[0], face[1], face[2]});
    facet_of.push_back(static_cast<int>(f));
  }
  return SurfaceMesh(positions, triangles, facet_of);
}

SolverConfig quick(int iterations) {
  SolverConfig config;
  config.iterations = iterations;
  config.cooling_rate = SolverConfig::cooling_for(iterations);
  config.restarts = 4;
  config.seed = 11;
  return config;
}

}  // namespace

TEST_CASE("region complement and additivity") {
  const SurfaceMesh mesh = subdivide(load("cube.json"), 2);
  std::mt19937_64 rng(5);
  std::bernoulli_distribution coin(0.3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::uint8_t> members(static_cast<std::size_t>(mesh.triangle_count()));
    for (auto& m : members) m = coin(rng) ? 1 : 0;
    const Region r(mesh, members);
    const Region c = r.complement();
    CHECK(r.area() >= 0);
    CHECK(r.cut_perimeter() >= 0);
    CHECK(std::abs(r.cut_perimeter() - c.cut_perimeter()) <= 1e-12);
    CHECK(std::abs(r.area() + c.area() - mesh.total_area()) <= 1e-12);
    CHECK(r.size() + c.size() == mesh.triangle_count());
  }
  // One cube face is a unit square: area 1, cut perimeter 4.
  const SurfaceMesh coarse = subdivide(load("cube.json"), 0);
  std::vector<std::uint8_t> face(static_cast<std::size_t>(coarse.triangle_count()), 0);
  for (int t = 0; t < coarse.triangle_count(); ++t) face[static_cast<std::size_t>(t)] = coarse.facet_of()[t] == 0;
  const Region square(coarse, face);
  CHECK(square.area() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(square.cut_perimeter() == doctest::Approx(4.0).epsilon(1e-14));
  CHECK_THROWS_AS(Region(coarse, std::vector<std::uint8_t>(3, 0)), Error);
}

TEST_CASE("vertex ball regions") {
  const Polytope cube = load("cube.json");
  const SurfaceMesh mesh = subdivide(cube, 5);
  const VertexCone cone = link_volume(cube, 0);
  const double v = 3 * pi / 16;
  CHECK(apex_ball_radius(cone, v) == doctest::Approx(0.5).epsilon(1e-14));
  const Region ball = vertex_ball_region(cube, mesh, 0, v);
  const auto& incident = cube.incident_facets(0);
  REQUIRE(incident.size() == 3);
  for (int t : ball.triangle_indices())
    CHECK(std::find(incident.begin(), incident.end(), mesh.facet_of()[t]) != incident.end());
  CHECK(std::abs(ball.area() - v) <= straddling_area(cube, mesh, 0, 0.5));
  // The straddling strip is a thin annulus of width ~ one triangle.
  CHECK(straddling_area(cube, mesh, 0, 0.5) <= 2.0 * 0.5 * 3 * pi / 2 * mesh.max_edge_length());

  const Polytope tet = load("tetrahedron.json");
  const VertexCone tcone = link_volume(tet, 0);
  CHECK(tcone.link_volume == doctest::Approx(pi).epsilon(1e-12));
  CHECK(apex_ball_radius(tcone, pi / 8) == doctest::Approx(0.5).epsilon(1e-14));
  const SurfaceMesh tmesh = subdivide(tet, 5);
  const Region tball = vertex_ball_region(tet, tmesh, 0, pi / 8);
  CHECK(std::abs(tball.area() - pi / 8) <= straddling_area(tet, tmesh, 0, 0.5));

  // Tiny volume: only triangles touching the vertex can remain.
  const SurfaceMesh coarse = subdivide(cube, 3);
  const Region tiny = vertex_ball_region(cube, coarse, 0, 1e-4);
  for (int t : tiny.triangle_indices()) {
    const auto& tri = coarse.triangles()[static_cast<std::size_t>(t)];
    CHECK(std::find(tri.begin(), tri.end(), 0) != tri.end());
  }
  try {
    vertex_ball_region(cube, mesh, 0, 3.0);
    FAIL("expected VolumeTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::VolumeTooLarge);
  }
}

TEST_CASE("anisotropy bound") {
  const Polytope cube = load("cube.json");
  // Cube faces fan into right isosceles triangles.
  for (int level : {0, 2, 4}) CHECK(anisotropy_bound(subdivide(cube, level)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  const SurfaceMesh ico = equilateral_mesh();
  for (int rounds : {0, 1, 3}) {
    const double k = anisotropy_bound(refine(ico, rounds));
    CHECK(k >= 1.0);
    CHECK(k <= 2.0 / std::sqrt(3.0) + 1e-2);
  }
  CHECK(anisotropy_bound(refine(ico, 3)) == doctest::Approx(anisotropy_bound(ico)).epsilon(1e-12));
}

TEST_CASE("annealing stays between the continuum bound and kappa times it") {
  const Polytope cube = load("cube.json");
  const SurfaceMesh mesh = subdivide(cube, 4);
  const double v = 0.05;
  const SolveResult result = minimize_perimeter(mesh, v, quick(100000));
  const double lower = std::sqrt(3 * pi * v);
  CHECK(continuum_bound(cube, v) == doctest::Approx(lower).epsilon(1e-14));
  CHECK(result.best.cut_perimeter() >= lower - 1e-9);
  CHECK(result.best.cut_perimeter() <= anisotropy_bound(mesh) * lower);
  CHECK(std::abs(result.best.area() - v) <= 0.02 * v);
  CHECK(result.restart_perimeters.size() == 4);
  CHECK(result.best.cut_perimeter() == *std::min_element(result.restart_perimeters.begin(), result.restart_perimeters.end()));

  // Bit-identical rerun.
  const SolveResult again = minimize_perimeter(mesh, v, quick(100000));
  CHECK(again.best.members() == result.best.members());
  CHECK(again.restart == result.restart);
  CHECK(again.restart_perimeters == result.restart_perimeters);
}

TEST_CASE("no region beats the best vertex ball on other polyhedra") {
  for (const char* name : {"tetrahedron.json", "octahedron.json", "square_pyramid.json"}) {
    const Polytope p = load(name);
    const SurfaceMesh mesh = subdivide(p, 4);
    const double v = 0.02 * mesh.total_area();
    const SolveResult r = minimize_perimeter(mesh, v, quick(40000));
    CHECK(r.best.cut_perimeter() >= continuum_bound(p, v) - 1e-9);
  }
}

TEST_CASE("half the cube is bounded by the band") {
  const SurfaceMesh mesh = subdivide(load("cube.json"), 2);
  SolverConfig config = quick(200000);
  config.area_penalty = 20.0;
  const SolveResult r = minimize_perimeter(mesh, 3.0, config);
  CHECK(r.best.cut_perimeter() <= 8.0 * anisotropy_bound(mesh));
}

TEST_CASE("solver errors") {
  const SurfaceMesh mesh = subdivide(load("cube.json"), 2);
  for (double bad : {0.0, -1.0, 6.0, 7.0}) {
    try {
      minimize_perimeter(mesh, bad, quick(100));
      FAIL("expected VolumeOutOfRange");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::VolumeOutOfRange);
    }
  }
  // Triangle area is 1/64, so 0.05 cannot be hit to 1e-9.
  SolverConfig tight = quick(2000);
  tight.area_tolerance = 1e-9;
  try {
    minimize_perimeter(mesh, 0.05, tight);
    FAIL("expected NoFeasibleRegion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoFeasibleRegion);
    CHECK(is_numerical(e.kind()));
  }
  SolverConfig broken = quick(100);
  broken.restarts = 0;
  CHECK_THROWS_AS(minimize_perimeter(mesh, 1.0, broken), Error);
  CHECK_THROWS_AS(continuum_bound(load("square.json"), 0.1), Error);
}
