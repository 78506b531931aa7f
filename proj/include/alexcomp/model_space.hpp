#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace alexcomp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Raised on invalid geometric input (chart mismatch, antipodes, bad data).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sectional curvature. Only the sign picks the chart; |kappa| is a scale.
struct Curvature {
  double kappa = 0.0;

  int sign() const { return kappa > 0 ? 1 : (kappa < 0 ? -1 : 0); }
  /// sqrt(|kappa|), or 1 in the flat case.
  double scale() const;
  /// Curvature lambda*kappa; distances shrink by sqrt(lambda).
  Curvature rescaled(double lambda) const;
};

/// Diameter of the model plane: pi/sqrt(kappa) for kappa > 0, infinity otherwise.
double pomega(Curvature k);

enum class Chart { Flat, Sphere, Hyperboloid };

Chart chart_for(Curvature k);
const char* chart_name(Chart c);

/// Coordinates in one of the three charts.
///
/// The sphere chart uses unit vectors of R^{m+1}; the hyperboloid chart uses
/// Minkowski space with the time coordinate first, <x,x> = -x0^2 + sum xi^2 = -1
/// and x0 >= 1. Coordinates always live on the unit-curvature chart; the
/// curvature magnitude is applied by ModelSpace when measuring.
struct ModelPoint {
  Chart chart = Chart::Flat;
  Vec coords;
};

/// Minkowski bilinear form with the time coordinate first.
double minkowski(const Vec& a, const Vec& b);

/**
 * @brief The m-dimensional model space of curvature kappa.
 *
 * Tangent vectors are ambient vectors at the base point (orthogonal to it in
 * the chart's inner product). Their chart norm equals length measured in the
 * metric of curvature kappa, so |log(a,b)| = dist(a,b).
 */
class ModelSpace {
 public:
  ModelSpace(Curvature k, int dim);

  Curvature curvature() const { return k_; }
  int dim() const { return dim_; }
  Chart chart() const { return chart_; }
  int ambient_dim() const { return chart_ == Chart::Flat ? dim_ : dim_ + 1; }

  ModelPoint origin() const;
  /// Validate coordinates against the chart (tolerance 1e-7) and renormalize.
  ModelPoint point(const Vec& coords) const;
  bool contains(const ModelPoint& p, double tol = 1e-7) const;

  double dist(const ModelPoint& a, const ModelPoint& b) const;
  /// Chart inner product of two tangent vectors.
  double inner(const Vec& u, const Vec& v) const;
  double norm(const Vec& v) const;
  Vec project_tangent(const ModelPoint& base, const Vec& v) const;
  /// Orthonormal basis of the tangent space at base, as ambient columns.
  Mat tangent_basis(const ModelPoint& base) const;

  ModelPoint exp(const ModelPoint& base, const Vec& v) const;
  ModelPoint exp(const ModelPoint& base, const Vec& unit_dir, double t) const;
  Vec log(const ModelPoint& base, const ModelPoint& target) const;
  /// Point at arclength t from a towards b.
  ModelPoint geodesic(const ModelPoint& a, const ModelPoint& b, double t) const;
  ModelPoint midpoint(const ModelPoint& a, const ModelPoint& b) const;

  /// exp at the origin, with the tangent vector given in m intrinsic coordinates.
  ModelPoint from_origin_tangent(const Vec& t) const;
  Vec to_origin_tangent(const ModelPoint& p) const;

  /// Embed a point of a lower-dimensional space with the same curvature by zero padding.
  ModelPoint lift(const ModelPoint& p) const;

 private:
  void check(const ModelPoint& p) const;
  double unit_dist(const ModelPoint& a, const ModelPoint& b) const;

  Curvature k_;
  int dim_;
  Chart chart_;
  double s_;
};

/// Points sharing one model space.
struct ModelConfig {
  Curvature curvature;
  int dim = 0;
  std::vector<ModelPoint> points;

  ModelSpace space() const { return ModelSpace(curvature, dim); }
  Mat distances() const;
};

/// Point t*u of the Euclidean cone over the unit sphere (u is a unit vector).
Vec cone_point(const ModelPoint& u, double s);
/// Cone distance for radii r1, r2 and angle between directions (clamped at pi).
double cone_dist(double r1, double r2, double angle);
/// Cone distance between two cone points given as ambient vectors.
double cone_dist(const Vec& x, const Vec& y);

}  // namespace alexcomp
