#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "polyiso/polytope.hpp"

namespace polyiso {

/// Minkowski gauge of a convex polytope about an interior origin:
/// F(x) = max_f a_f . (x - origin) / b_f, so that {F <= 1} is the polytope.
class GaugeFunction {
 public:
  /// Throws OriginNotInterior unless every facet offset about `origin` is positive.
  GaugeFunction(const Polytope& polytope, Point origin);

  double operator()(const Point& x) const;

  int dim() const { return static_cast<int>(origin_.size()); }
  const Point& origin() const { return origin_; }
  /// Rows a_f / b_f.
  const Eigen::MatrixXd& scaled_normals() const { return scaled_normals_; }
  /// max over the unit ball of F(origin + z); F(x + z) <= F(x) + |z| * lipschitz().
  double lipschitz() const { return lipschitz_; }

 private:
  Point origin_;
  Eigen::MatrixXd scaled_normals_;
  double lipschitz_ = 0.0;
};

/// Radial bump phi(z) = C exp(-1/(1 - |z|^2)) on the unit ball of R^dim,
/// normalized to integral 1, scaled as phi_eps(y) = phi(y / eps) / eps^dim.
///
/// Carries a fixed product quadrature (Gauss-Legendre radially and in the
/// polar cosine, uniform in azimuth) that is symmetric under z -> -z, with
/// weights summing to exactly 1. eps = 0 gives the point mass at the origin.
class Mollifier {
 public:
  Mollifier(int dim, double eps);

  static double bump(double r);

  int dim() const { return dim_; }
  double eps() const { return eps_; }
  /// phi at unit scale.
  double density(const Eigen::VectorXd& z) const;
  /// phi_eps(y).
  double kernel(const Eigen::VectorXd& y) const;

  /// Quadrature offsets y_j (already scaled by eps) and weights.
  const Eigen::MatrixXd& offsets() const { return offsets_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  int dim_;
  double eps_;
  double normalization_ = 0.0;
  Eigen::MatrixXd offsets_;
  std::vector<double> weights_;
};

/// F_eps(x) = sum_j w_j F(x - y_j), the quadrature of the convolution F * phi_eps.
double mollify(const GaugeFunction& gauge, const Mollifier& mollifier, const Point& x);

/// Gauge and mollifier with the products a_f . y_j precomputed.
class MollifiedGauge {
 public:
  MollifiedGauge(GaugeFunction gauge, Mollifier mollifier);

  double operator()(const Point& x) const;

  const GaugeFunction& gauge() const { return gauge_; }
  const Mollifier& mollifier() const { return mollifier_; }

 private:
  GaugeFunction gauge_;
  Mollifier mollifier_;
  Eigen::MatrixXd shifts_;  // facets x nodes
};

/// Smoothed body {F_eps <= 1} sampled along directions about the gauge origin.
struct SmoothedBody {
  MollifiedGauge field;
  std::vector<Eigen::VectorXd> directions;
  std::vector<double> weights;
  std::vector<double> rho_polytope;
  std::vector<double> rho_smoothed;
  /// (1/n) sum_u w_u rho^n for the smoothed body and the polytope.
  double volume = 0.0;
  double polytope_volume = 0.0;
  /// Bounding box of the polytope.
  Eigen::VectorXd box_min;
  Eigen::VectorXd box_max;

  double eps() const { return field.mollifier().eps(); }
};

/// Unit directions with quadrature weights: equally spaced on the circle
/// (dim 2), a Fibonacci lattice with equal weights (dim 3).
void direction_set(int dim, int count, std::vector<Eigen::VectorXd>& directions, std::vector<double>& weights);

/// Root of F_eps(origin + rho u) = 1, bisected to 1e-11.
double smoothed_radius(const MollifiedGauge& field, const Eigen::VectorXd& direction);

/// Requires d in {2, 3}. The origin defaults to the vertex centroid.
SmoothedBody smoothed_body(const Polytope& polytope, double eps, int direction_count);
SmoothedBody smoothed_body(const Polytope& polytope, double eps, int direction_count, const Point& origin);

struct ConvexityReport {
  int trials = 0;
  /// max of F(l x + (1-l) y) - l F(x) - (1-l) F(y) over the trials.
  double max_violation = 0.0;
};

/// Random chords between points of the body, seeded.
ConvexityReport convexity_probe(const SmoothedBody& body, int trials, std::uint64_t seed);

}  // namespace polyiso
