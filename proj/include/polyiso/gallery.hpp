#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace polyiso {

struct CompetitorEntry {
  std::string family;
  double perimeter = 0.0;
  bool valid = false;
};

struct CompetitorReport {
  double volume = 0.0;
  std::vector<CompetitorEntry> entries;
  /// Family with the least valid perimeter.
  std::string winner;
  double winning_perimeter = 0.0;
};

/// Analytic competitor families on the surface of the unit cube (total area 6).
/// Every family F has a complement F' with A_F'(V) = A_F(6 - V).
CompetitorReport cube_competitors(double volume);

struct Crossover {
  double volume = 0.0;
  std::string before;
  std::string after;
};

/// Volumes in (0, 6) where the winning family changes, located by scanning
/// `samples` points and bisecting each change.
std::vector<Crossover> cube_crossovers(int samples = 600);

struct DoublePyramidReport {
  double theta = 0.0;
  double volume = 0.0;
  /// Ball on one side of the glued apex (link theta).
  double one_sided = 0.0;
  /// Metric ball about the glued apex (link 2 theta).
  double glued = 0.0;
  double ratio = 0.0;
  bool glued_ball_minimizing = true;
  /// Optional comparison with the best base vertex of the pyramids.
  std::optional<double> base_link;
  std::optional<double> base_ball;
  std::optional<bool> one_sided_beats_base;
};

DoublePyramidReport double_pyramid_report(double theta, double volume, std::optional<double> base_link = {});

/// Unit cube surface K in the hyperplane x4 = height of R^4, with an
/// equilateral-based tetrahedral spike standing on the centre of its top face.
struct SpikedConeSpec {
  double side = 1.0;
  double height = 1.0;
  double spike_circumradius = 0.25;
  /// Angle between the spike axis and its lateral edges.
  double apex_half_angle_deg = 5.0;
};

struct SpikedConeReport {
  double spike_height = 0.0;
  /// Total angle at the spike tip p in K.
  double theta_p = 0.0;
  /// Link at q on the ray over p: numeric suspension of a curve of length theta_p.
  double link_q = 0.0;
  /// Link at the apex 0: area of the radial projection of K to the unit 3-sphere.
  double link_apex = 0.0;
  double link_hypercube = 0.0;
  double volume = 0.0;
  double perimeter_q = 0.0;
  double perimeter_apex = 0.0;
  double perimeter_hypercube = 0.0;
  bool q_beats_apex = false;
};

SpikedConeReport spiked_cone_report(const SpikedConeSpec& spec, double volume);

/// Area of the spherical suspension of a curve of length L, by Gauss-Legendre
/// integration of L cos s over s in [-pi/2, pi/2].
double suspension_area(double length);

/// Area of the radial projection to the unit sphere of a planar convex polygon
/// (vertices in order, any ambient dimension). Throws ProjectionDegenerate when
/// the polygon's plane passes through the origin.
double projected_area(const std::vector<Eigen::VectorXd>& polygon);

}  // namespace polyiso
