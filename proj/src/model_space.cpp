#include "alexcomp/model_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace alexcomp {

namespace {

constexpr double kChartTol = 1e-7;

double angle_between(const Vec& a, const Vec& b) {
  // stable for both small and near-pi angles
  const double na = a.norm(), nb = b.norm();
  const Vec ua = a / na, ub = b / nb;
  return 2.0 * std::atan2((ua - ub).norm(), (ua + ub).norm());
}

}  // namespace

double Curvature::scale() const { return kappa == 0.0 ? 1.0 : std::sqrt(std::abs(kappa)); }

Curvature Curvature::rescaled(double lambda) const {
  if (!(lambda > 0.0)) throw GeometryError("rescale factor must be positive");
  return Curvature{lambda * kappa};
}

double pomega(Curvature k) {
  if (k.kappa <= 0.0) return kInfinity;
  return std::numbers::pi / std::sqrt(k.kappa);
}

Chart chart_for(Curvature k) {
  switch (k.sign()) {
    case 1: return Chart::Sphere;
    case -1: return Chart::Hyperboloid;
    default: return Chart::Flat;
  }
}

const char* chart_name(Chart c) {
  switch (c) {
    case Chart::Sphere: return "sphere";
    case Chart::Hyperboloid: return "hyperboloid";
    default: return "flat";
  }
}

double minkowski(const Vec& a, const Vec& b) {
  return -a[0] * b[0] + a.tail(a.size() - 1).dot(b.tail(b.size() - 1));
}

ModelSpace::ModelSpace(Curvature k, int dim) : k_(k), dim_(dim), chart_(chart_for(k)), s_(k.scale()) {
  if (dim < 1) throw GeometryError("model space dimension must be >= 1");
  if (!std::isfinite(k.kappa)) throw GeometryError("curvature must be finite");
}

ModelPoint ModelSpace::origin() const {
  Vec c = Vec::Zero(ambient_dim());
  if (chart_ != Chart::Flat) c[0] = 1.0;
  return {chart_, c};
}

ModelPoint ModelSpace::point(const Vec& coords) const {
  if (coords.size() != ambient_dim())
    throw GeometryError("coordinate count " + std::to_string(coords.size()) + " does not match chart dimension " +
                        std::to_string(ambient_dim()));
  if (!coords.allFinite()) throw GeometryError("non-finite coordinates");
  ModelPoint p{chart_, coords};
  if (!contains(p)) throw GeometryError(std::string("point is not on the ") + chart_name(chart_) + " chart");
  if (chart_ == Chart::Sphere) {
    p.coords.normalize();
  } else if (chart_ == Chart::Hyperboloid) {
    p.coords /= std::sqrt(-minkowski(coords, coords));
  }
  return p;
}

bool ModelSpace::contains(const ModelPoint& p, double tol) const {
  if (p.chart != chart_ || p.coords.size() != ambient_dim()) return false;
  switch (chart_) {
    case Chart::Sphere: return std::abs(p.coords.squaredNorm() - 1.0) <= tol;
    case Chart::Hyperboloid: {
      const double q = minkowski(p.coords, p.coords);
      return p.coords[0] > 0.0 && std::abs(q + 1.0) <= tol * std::max(1.0, p.coords[0] * p.coords[0]);
    }
    default: return true;
  }
}

void ModelSpace::check(const ModelPoint& p) const {
  if (p.chart != chart_) throw GeometryError("chart mismatch");
  if (p.coords.size() != ambient_dim()) throw GeometryError("dimension mismatch");
}

double ModelSpace::unit_dist(const ModelPoint& a, const ModelPoint& b) const {
  check(a);
  check(b);
  switch (chart_) {
    case Chart::Sphere:
      return 2.0 * std::atan2((a.coords - b.coords).norm(), (a.coords + b.coords).norm());
    case Chart::Hyperboloid: {
      const Vec diff = a.coords - b.coords;
      double m = minkowski(diff, diff);  // equals 4 sinh^2(d/2)
      if (m < 0.0) {
        if (m < -kChartTol * std::max(1.0, a.coords[0] * b.coords[0]))
          throw GeometryError("hyperboloid points give a timelike difference");
        m = 0.0;
      }
      return 2.0 * std::asinh(0.5 * std::sqrt(m));
    }
    default: return (a.coords - b.coords).norm();
  }
}

double ModelSpace::dist(const ModelPoint& a, const ModelPoint& b) const { return unit_dist(a, b) / s_; }

double ModelSpace::inner(const Vec& u, const Vec& v) const {
  return chart_ == Chart::Hyperboloid ? minkowski(u, v) : u.dot(v);
}

double ModelSpace::norm(const Vec& v) const { return std::sqrt(std::max(0.0, inner(v, v))); }

Vec ModelSpace::project_tangent(const ModelPoint& base, const Vec& v) const {
  switch (chart_) {
    case Chart::Sphere: return v - base.coords.dot(v) * base.coords;
    case Chart::Hyperboloid: return v + minkowski(base.coords, v) * base.coords;
    default: return v;
  }
}

Mat ModelSpace::tangent_basis(const ModelPoint& base) const {
  check(base);
  const int n = ambient_dim();
  Mat basis(n, dim_);
  int found = 0;
  // Gram-Schmidt on projected coordinate axes, largest projections first.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  Vec weight(n);
  for (int i = 0; i < n; ++i) weight[i] = norm(project_tangent(base, Vec::Unit(n, i)));
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return weight[a] > weight[b]; });
  for (int idx : order) {
    if (found == dim_) break;
    Vec v = project_tangent(base, Vec::Unit(n, idx));
    for (int j = 0; j < found; ++j) v -= inner(basis.col(j), v) * basis.col(j);
    for (int j = 0; j < found; ++j) v -= inner(basis.col(j), v) * basis.col(j);
    const double nv = norm(v);
    if (nv < 1e-8) continue;
    basis.col(found++) = v / nv;
  }
  if (found != dim_) throw GeometryError("could not build a tangent basis");
  return basis;
}

ModelPoint ModelSpace::exp(const ModelPoint& base, const Vec& v) const {
  check(base);
  if (v.size() != ambient_dim()) throw GeometryError("tangent vector dimension mismatch");
  if (chart_ == Chart::Flat) return {chart_, base.coords + v};
  const Vec w = project_tangent(base, v);
  const double len = norm(w);
  const double t = s_ * len;  // angle or hyperbolic length on the unit chart
  if (len == 0.0) return base;
  if (chart_ == Chart::Sphere && t > std::numbers::pi + 1e-12)
    throw GeometryError("spherical exp beyond the antipode");
  Vec c;
  if (chart_ == Chart::Sphere) {
    c = std::cos(t) * base.coords + std::sin(t) * (w / len);
    c.normalize();
  } else {
    c = std::cosh(t) * base.coords + std::sinh(t) * (w / len);
    c /= std::sqrt(-minkowski(c, c));
  }
  return {chart_, c};
}

ModelPoint ModelSpace::exp(const ModelPoint& base, const Vec& unit_dir, double t) const {
  if (t < 0.0) throw GeometryError("exp length must be nonnegative");
  const double n = norm(project_tangent(base, unit_dir));
  if (n == 0.0) {
    if (t == 0.0) return base;
    throw GeometryError("zero direction");
  }
  return exp(base, project_tangent(base, unit_dir) * (t / n));
}

Vec ModelSpace::log(const ModelPoint& base, const ModelPoint& target) const {
  check(base);
  check(target);
  if (chart_ == Chart::Flat) return target.coords - base.coords;
  const double d = dist(base, target);
  const Vec w = project_tangent(base, target.coords);
  const double nw = norm(w);
  if (d == 0.0) return Vec::Zero(ambient_dim());
  if (chart_ == Chart::Sphere && (nw < 1e-12 || s_ * d > std::numbers::pi - 1e-12) &&
      base.coords.dot(target.coords) < 0.0)
    throw GeometryError("log at the antipode is not defined");
  if (nw == 0.0) return Vec::Zero(ambient_dim());
  return w * (d / nw);
}

ModelPoint ModelSpace::geodesic(const ModelPoint& a, const ModelPoint& b, double t) const {
  const double d = dist(a, b);
  if (t == 0.0 || d == 0.0) return a;
  if (chart_ == Chart::Flat) return {chart_, a.coords + (t / d) * (b.coords - a.coords)};
  return exp(a, log(a, b) * (t / d));
}

ModelPoint ModelSpace::midpoint(const ModelPoint& a, const ModelPoint& b) const {
  return geodesic(a, b, 0.5 * dist(a, b));
}

ModelPoint ModelSpace::from_origin_tangent(const Vec& t) const {
  if (t.size() != dim_) throw GeometryError("tangent coordinate count mismatch");
  if (chart_ == Chart::Flat) return {chart_, t};
  Vec v = Vec::Zero(ambient_dim());
  v.tail(dim_) = t;
  return exp(origin(), v);
}

Vec ModelSpace::to_origin_tangent(const ModelPoint& p) const {
  if (chart_ == Chart::Flat) {
    check(p);
    return p.coords;
  }
  return log(origin(), p).tail(dim_);
}

ModelPoint ModelSpace::lift(const ModelPoint& p) const {
  if (p.chart != chart_) throw GeometryError("chart mismatch");
  if (p.coords.size() > ambient_dim()) throw GeometryError("cannot lift into a smaller space");
  Vec c = Vec::Zero(ambient_dim());
  c.head(p.coords.size()) = p.coords;
  return {chart_, c};
}

Mat ModelConfig::distances() const {
  const ModelSpace s = space();
  const int n = static_cast<int>(points.size());
  Mat d = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = s.dist(points[i], points[j]);
  return d;
}

Vec cone_point(const ModelPoint& u, double s) {
  if (u.chart != Chart::Sphere) throw GeometryError("cone directions must be sphere points");
  if (s < 0.0) throw GeometryError("cone radius must be nonnegative");
  return s * u.coords;
}

double cone_dist(double r1, double r2, double angle) {
  const double a = std::min(std::max(angle, 0.0), std::numbers::pi);
  // |x-y|^2 = (r1-r2)^2 + 4 r1 r2 sin^2(a/2), avoids cancellation
  const double h = std::sin(0.5 * a);
  return std::sqrt((r1 - r2) * (r1 - r2) + 4.0 * r1 * r2 * h * h);
}

double cone_dist(const Vec& x, const Vec& y) {
  const double rx = x.norm(), ry = y.norm();
  if (rx == 0.0) return ry;
  if (ry == 0.0) return rx;
  return cone_dist(rx, ry, angle_between(x, y));
}

}  // namespace alexcomp
