#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "polyiso/error.hpp"
#include "polyiso/gallery.hpp"

using namespace polyiso;

namespace {

constexpr double pi = std::numbers::pi;

std::map<std::string, CompetitorEntry> by_family(const CompetitorReport& r) {
  std::map<std::string, CompetitorEntry> out;
  for (const auto& e : r.entries) out[e.family] = e;
  return out;
}

// Van Oosterom-Strackee solid angle of a triangle seen from the origin.
double triangle_solid_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
  const double num = std::abs(a.dot(b.cross(c)));
  const double den = a.norm() * b.norm() * c.norm() + a.dot(b) * c.norm() + a.dot(c) * b.norm() + b.dot(c) * a.norm();
  return 2 * std::atan2(num, den);
}

Eigen::VectorXd v3(double x, double y, double z) { return Eigen::Vector3d(x, y, z); }

}  // namespace

TEST_CASE("cube competitors") {
  const auto small = cube_competitors(0.1);
  CHECK(small.winner == "vertex-ball");
  CHECK(small.winning_perimeter == doctest::Approx(std::sqrt(0.3 * pi)).epsilon(1e-14));
  const auto f = by_family(small);
  CHECK(f.at("flat-disc").perimeter == doctest::Approx(std::sqrt(0.4 * pi)));
  CHECK(f.at("band").perimeter == 8.0);
  CHECK(f.at("flat-disc").perimeter > small.winning_perimeter);

  const auto half = by_family(cube_competitors(3.0));
  CHECK(half.at("band").valid);
  CHECK(half.at("band").perimeter == 8.0);
  CHECK_FALSE(half.at("vertex-ball").valid);
  CHECK_FALSE(half.at("flat-disc").valid);
  CHECK(cube_competitors(3.0).winning_perimeter <= 8.0);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.01, 5.99);
  for (int i = 0; i < 100; ++i) {
    const double v = u(rng);
    const auto a = by_family(cube_competitors(v));
    const auto b = by_family(cube_competitors(6 - v));
    for (const auto& [name, entry] : a) {
      if (name.ends_with("-complement")) continue;
      const auto& mirror = b.at(name + "-complement");
      CHECK(entry.perimeter == doctest::Approx(mirror.perimeter).epsilon(1e-14));
      CHECK(entry.valid == mirror.valid);
    }
    CHECK(cube_competitors(v).winning_perimeter == doctest::Approx(cube_competitors(6 - v).winning_perimeter).epsilon(1e-14));
  }

  const auto crossings = cube_crossovers();
  REQUIRE(crossings.size() == 2);
  // sqrt(3 pi V) = 4.
  CHECK(crossings[0].volume == doctest::Approx(16 / (3 * pi)).epsilon(1e-10));
  CHECK(crossings[0].before == "vertex-ball");
  CHECK(crossings[1].volume == doctest::Approx(6 - 16 / (3 * pi)).epsilon(1e-10));
  CHECK(crossings[1].after == "vertex-ball-complement");

  for (double bad : {0.0, 6.0, -1.0}) {
    try {
      cube_competitors(bad);
      FAIL("expected VolumeOutOfRange");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::VolumeOutOfRange);
    }
  }
}

TEST_CASE("double pyramid") {
  const auto r = double_pyramid_report(0.2, 0.01);
  CHECK(r.one_sided == doctest::Approx(std::sqrt(0.004)).epsilon(1e-14));
  CHECK(r.glued == doctest::Approx(std::sqrt(0.008)).epsilon(1e-14));
  CHECK_FALSE(r.glued_ball_minimizing);
  CHECK_FALSE(r.base_link.has_value());

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> theta(1e-3, 2 * pi - 1e-3);
  std::uniform_real_distribution<double> lv(-8, 1);
  for (int i = 0; i < 200; ++i) {
    const auto s = double_pyramid_report(theta(rng), std::pow(10.0, lv(rng)));
    CHECK(std::abs(s.ratio - std::sqrt(2.0)) <= 1e-12);
  }

  const auto skinny = double_pyramid_report(0.2, 0.01, 3 * pi / 2);
  REQUIRE(skinny.one_sided_beats_base.has_value());
  CHECK(*skinny.one_sided_beats_base);
  CHECK(*skinny.base_ball == doctest::Approx(std::sqrt(2 * 3 * pi / 2 * 0.01)));
  CHECK_FALSE(*double_pyramid_report(0.2, 0.01, 0.1).one_sided_beats_base);
  CHECK_THROWS_AS(double_pyramid_report(2 * pi, 0.01), Error);
  CHECK_THROWS_AS(double_pyramid_report(0.0, 0.01), Error);
}

TEST_CASE("spherical suspension doubles length") {
  for (double l : {0.1, 0.5, 1.0}) CHECK(std::abs(suspension_area(l) - 2 * l) <= 1e-4);
}

TEST_CASE("projected polygon areas") {
  // Square of half-side a at distance d: 4 asin(a^2 / (a^2 + d^2)).
  for (double a : {0.1, 0.5, 1.0})
    for (double d : {0.5, 1.0, 3.0}) {
      const std::vector<Eigen::VectorXd> sq{v3(-a, -a, d), v3(a, -a, d), v3(a, a, d), v3(-a, a, d)};
      CHECK(projected_area(sq) == doctest::Approx(4 * std::asin(a * a / (a * a + d * d))).epsilon(1e-9));
    }
  // Cube face seen from the centre: a sixth of the sphere.
  const std::vector<Eigen::VectorXd> face{v3(-1, -1, 1), v3(1, -1, 1), v3(1, 1, 1), v3(-1, 1, 1)};
  CHECK(projected_area(face) == doctest::Approx(4 * pi / 6).epsilon(1e-9));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 20; ++i) {
    const Eigen::Vector3d a(u(rng), u(rng), 2 + u(rng)), b(u(rng), u(rng), 2 + u(rng)), c(u(rng), u(rng), 2 + u(rng));
    CHECK(projected_area({a, b, c}) == doctest::Approx(triangle_solid_angle(a, b, c)).epsilon(1e-8));
  }

  // The same square in a 3-plane of R^4 at x4 = 0, rotated in the (x3, x4) plane.
  const double t = 0.7;
  std::vector<Eigen::VectorXd> lifted;
  for (const auto& p : face) {
    Eigen::VectorXd q(4);
    q << p(0), p(1), std::cos(t) * p(2), std::sin(t) * p(2);
    lifted.push_back(q);
  }
  CHECK(projected_area(lifted) == doctest::Approx(4 * pi / 6).epsilon(1e-9));

  const std::vector<Eigen::VectorXd> through{v3(0, 0, 0), v3(1, 0, 0), v3(0, 1, 0)};
  try {
    projected_area(through);
    FAIL("expected ProjectionDegenerate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ProjectionDegenerate);
  }
}

TEST_CASE("spiked cone") {
  const SpikedConeSpec spec;
  const auto r = spiked_cone_report(spec, 1e-3);
  // Lateral faces are isosceles with edges sqrt(R^2 + h^2) and base R sqrt 3.
  const double h = spec.spike_circumradius / std::tan(spec.apex_half_angle_deg * pi / 180);
  CHECK(r.spike_height == doctest::Approx(h).epsilon(1e-14));
  const double lateral = std::hypot(spec.spike_circumradius, h);
  const double theta_p = 3 * 2 * std::asin(spec.spike_circumradius * std::sqrt(3.0) / (2 * lateral));
  CHECK(r.theta_p == doctest::Approx(theta_p).epsilon(1e-12));
  CHECK(std::abs(r.link_q - 2 * r.theta_p) <= 1e-4);
  CHECK(r.link_hypercube == doctest::Approx(2 * pi));
  CHECK(r.q_beats_apex);
  CHECK(r.perimeter_q < r.perimeter_apex);
  // The cube alone at x4 = 1 subtends less than its full shadow; the spike adds a little.
  CHECK(r.link_apex > 2 * r.theta_p);
  CHECK(r.link_apex < 2 * pi * pi);

  for (double angle : {1.0, 2.5, 5.0}) {
    SpikedConeSpec s;
    s.apex_half_angle_deg = angle;
    CHECK(spiked_cone_report(s, 1e-3).q_beats_apex);
  }

  SpikedConeSpec scaled;
  scaled.side = 3.0;
  scaled.height = 3.0;
  scaled.spike_circumradius = 0.75;
  const auto big = spiked_cone_report(scaled, 1e-3);
  CHECK(big.theta_p == doctest::Approx(r.theta_p).epsilon(1e-12));
  CHECK(big.link_apex == doctest::Approx(r.link_apex).epsilon(1e-9));
  CHECK(big.q_beats_apex == r.q_beats_apex);

  SpikedConeSpec flat;
  flat.height = 0.0;
  try {
    spiked_cone_report(flat, 1e-3);
    FAIL("expected ProjectionDegenerate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ProjectionDegenerate);
  }
}
