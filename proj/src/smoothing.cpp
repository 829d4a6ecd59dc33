#include "polyiso/smoothing.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss.hpp>

#include "polyiso/error.hpp"
#include "polyiso/measure.hpp"

namespace polyiso {
namespace {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Full Gauss-Legendre rule on [-1, 1] from Boost's half-rule tables.
template <unsigned N>
Rule gauss_legendre() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  Rule rule;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      rule.nodes.push_back(0.0);
      rule.weights.push_back(w[i]);
    } else {
      rule.nodes.push_back(-x[i]);
      rule.weights.push_back(w[i]);
      rule.nodes.push_back(x[i]);
      rule.weights.push_back(w[i]);
    }
  }
  return rule;
}

// Radial rule on [0, 1] for the integrand bump(r) r^{dim-1}.
Rule radial_rule(const Rule& base, int dim) {
  Rule rule;
  for (std::size_t i = 0; i < base.nodes.size(); ++i) {
    const double r = 0.5 * (base.nodes[i] + 1.0);
    rule.nodes.push_back(r);
    rule.weights.push_back(0.5 * base.weights[i] * Mollifier::bump(r) * std::pow(r, dim - 1));
  }
  return rule;
}

constexpr int kAzimuth2d = 64;
constexpr int kAzimuth3d = 32;

}  // namespace

GaugeFunction::GaugeFunction(const Polytope& polytope, Point origin) : origin_(std::move(origin)) {
  const int facets = polytope.facet_count();
  scaled_normals_.resize(facets, polytope.ambient_dim());
  for (int f = 0; f < facets; ++f) {
    const auto& plane = polytope.planes()[f];
    const double b = -plane.signed_distance(origin_);
    if (!(b > 0)) throw Error(ErrorKind::OriginNotInterior, "origin is not strictly inside the polytope");
    scaled_normals_.row(f) = plane.normal.transpose() / b;
    lipschitz_ = std::max(lipschitz_, 1.0 / b);
  }
}

double GaugeFunction::operator()(const Point& x) const {
  return (scaled_normals_ * (x - origin_)).maxCoeff();
}

double Mollifier::bump(double r) {
  if (r >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - r * r));
}

Mollifier::Mollifier(int dim, double eps) : dim_(dim), eps_(eps) {
  if (dim != 2 && dim != 3) throw Error(ErrorKind::UnsupportedDimension, "mollifier supports dimensions 2 and 3");
  if (!(eps >= 0)) throw Error(ErrorKind::BadArgument, "eps must be non-negative");

  const Rule fine = radial_rule(gauss_legendre<64>(), dim);
  double radial_integral = 0.0;
  for (double w : fine.weights) radial_integral += w;
  normalization_ = 1.0 / (sphere_measure(dim - 1) * radial_integral);

  if (eps == 0.0) {
    offsets_ = Eigen::MatrixXd::Zero(dim, 1);
    weights_ = {1.0};
    return;
  }

  std::vector<Eigen::VectorXd> nodes;
  if (dim == 2) {
    const Rule radial = radial_rule(gauss_legendre<24>(), 2);
    for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
      for (int j = 0; j < kAzimuth2d; ++j) {
        const double theta = 2.0 * std::numbers::pi * (j + 0.5) / kAzimuth2d;
        nodes.push_back(radial.nodes[i] * Eigen::Vector2d(std::cos(theta), std::sin(theta)));
        weights_.push_back(radial.weights[i]);
      }
    }
  } else {
    const Rule radial = radial_rule(gauss_legendre<16>(), 3);
    const Rule polar = gauss_legendre<16>();
    for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
      for (std::size_t p = 0; p < polar.nodes.size(); ++p) {
        const double c = polar.nodes[p];
        const double s = std::sqrt(1.0 - c * c);
        for (int j = 0; j < kAzimuth3d; ++j) {
          const double phi = 2.0 * std::numbers::pi * (j + 0.5) / kAzimuth3d;
          nodes.push_back(radial.nodes[i] * Eigen::Vector3d(s * std::cos(phi), s * std::sin(phi), c));
          weights_.push_back(radial.weights[i] * polar.weights[p]);
        }
      }
    }
  }
  double total = 0.0;
  for (double w : weights_) total += w;
  for (double& w : weights_) w /= total;
  offsets_.resize(dim, static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t j = 0; j < nodes.size(); ++j) offsets_.col(static_cast<Eigen::Index>(j)) = eps * nodes[j];
}

double Mollifier::density(const Eigen::VectorXd& z) const { return normalization_ * bump(z.norm()); }

double Mollifier::kernel(const Eigen::VectorXd& y) const {
  return density(y / eps_) / std::pow(eps_, dim_);
}

double mollify(const GaugeFunction& gauge, const Mollifier& mollifier, const Point& x) {
  double total = 0.0;
  const auto& offsets = mollifier.offsets();
  for (Eigen::Index j = 0; j < offsets.cols(); ++j)
    total += mollifier.weights()[static_cast<std::size_t>(j)] * gauge(x - offsets.col(j));
  return total;
}

MollifiedGauge::MollifiedGauge(GaugeFunction gauge, Mollifier mollifier)
    : gauge_(std::move(gauge)), mollifier_(std::move(mollifier)) {
  if (gauge_.dim() != mollifier_.dim()) throw Error(ErrorKind::BadArgument, "gauge and mollifier dimensions differ");
  shifts_ = gauge_.scaled_normals() * mollifier_.offsets();
}

double MollifiedGauge::operator()(const Point& x) const {
  const Eigen::VectorXd base = gauge_.scaled_normals() * (x - gauge_.origin());
  const Eigen::Index facets = shifts_.rows();
  const auto& weights = mollifier_.weights();
  double total = 0.0;
  for (Eigen::Index j = 0; j < shifts_.cols(); ++j) {
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index f = 0; f < facets; ++f) best = std::max(best, base(f) - shifts_(f, j));
    total += weights[static_cast<std::size_t>(j)] * best;
  }
  return total;
}

void direction_set(int dim, int count, std::vector<Eigen::VectorXd>& directions, std::vector<double>& weights) {
  if (count < 1) throw Error(ErrorKind::BadArgument, "need at least one direction");
  directions.clear();
  weights.clear();
  if (dim == 2) {
    for (int j = 0; j < count; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / count;
      directions.push_back(Eigen::Vector2d(std::cos(theta), std::sin(theta)));
      weights.push_back(2.0 * std::numbers::pi / count);
    }
  } else if (dim == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < count; ++j) {
      const double z = 1.0 - (2.0 * j + 1.0) / count;
      const double r = std::sqrt(1.0 - z * z);
      const double phi = golden * j;
      directions.push_back(Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), z));
      weights.push_back(4.0 * std::numbers::pi / count);
    }
  } else {
    throw Error(ErrorKind::UnsupportedDimension, "direction sets exist for dimensions 2 and 3");
  }
}

double smoothed_radius(const MollifiedGauge& field, const Eigen::VectorXd& direction) {
  const auto& gauge = field.gauge();
  const Point& origin = gauge.origin();
  const double unit = gauge(origin + direction);
  double hi = 1.0 / unit;  // F_eps >= F = 1 here
  // F_eps(x) <= F(x) + eps L gives an inner bracket when eps L < 1.
  double lo = std::max(0.0, (1.0 - field.mollifier().eps() * gauge.lipschitz()) / unit);
  if (!(field(origin + lo * direction) < 1.0)) {
    lo = 0.0;
    if (!(field(origin) < 1.0)) throw Error(ErrorKind::RootNotBracketed, "F_eps >= 1 at the origin; eps too large");
  }
  while (hi - lo > 1e-11) {
    const double mid = 0.5 * (lo + hi);
    if (field(origin + mid * direction) < 1.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

SmoothedBody smoothed_body(const Polytope& polytope, double eps, int direction_count) {
  return smoothed_body(polytope, eps, direction_count, polytope.vertex_centroid());
}

SmoothedBody smoothed_body(const Polytope& polytope, double eps, int direction_count, const Point& origin) {
  const int dim = polytope.ambient_dim();
  if (dim != 2 && dim != 3) throw Error(ErrorKind::UnsupportedDimension, "smoothing supports d = 2 and d = 3");
  SmoothedBody body{MollifiedGauge(GaugeFunction(polytope, origin), Mollifier(dim, eps))};
  direction_set(dim, direction_count, body.directions, body.weights);
  for (std::size_t i = 0; i < body.directions.size(); ++i) {
    const auto& u = body.directions[i];
    const double rho0 = 1.0 / body.field.gauge()(origin + u);
    const double rho = eps == 0.0 ? rho0 : smoothed_radius(body.field, u);
    body.rho_polytope.push_back(rho0);
    body.rho_smoothed.push_back(rho);
    body.volume += body.weights[i] * std::pow(rho, dim) / dim;
    body.polytope_volume += body.weights[i] * std::pow(rho0, dim) / dim;
  }
  body.box_min = polytope.vertices().front();
  body.box_max = polytope.vertices().front();
  for (const auto& v : polytope.vertices()) {
    body.box_min = body.box_min.cwiseMin(v);
    body.box_max = body.box_max.cwiseMax(v);
  }
  return body;
}

ConvexityReport convexity_probe(const SmoothedBody& body, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorKind::BadArgument, "need at least one trial");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto dim = body.box_min.size();
  auto sample_inside = [&](double& value) {
    Point x(dim);
    for (int attempt = 0; attempt < 10000; ++attempt) {
      for (Eigen::Index i = 0; i < dim; ++i) x(i) = body.box_min(i) + unit(rng) * (body.box_max(i) - body.box_min(i));
      if (body.field.gauge()(x) > 1.0) continue;
      value = body.field(x);
      if (value <= 1.0) return x;
    }
    throw Error(ErrorKind::RootNotBracketed, "smoothed body is too small to sample");
  };
  ConvexityReport report;
  report.trials = trials;
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    double fx = 0.0;
    double fy = 0.0;
    const Point x = sample_inside(fx);
    const Point y = sample_inside(fy);
    const double lambda = unit(rng);
    const double mixed = body.field(lambda * x + (1.0 - lambda) * y);
    report.max_violation = std::max(report.max_violation, mixed - (lambda * fx + (1.0 - lambda) * fy));
  }
  return report;
}

}  // namespace polyiso
