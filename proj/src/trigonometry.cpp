#include "alexcomp/trigonometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace alexcomp {

namespace {

// f in the half-angle formulas: id, sin or sinh on the unit chart.
double chart_f(int sign, double x) {
  if (sign > 0) return std::sin(x);
  if (sign < 0) return std::sinh(x);
  return x;
}

}  // namespace

double triangle_tolerance(double a, double b, double c) { return 1e-12 * (1.0 + a + b + c); }

std::optional<double> model_angle(double d_pq, double d_pr, double d_qr, Curvature k) {
  if (!(d_pq >= 0.0) || !(d_pr >= 0.0) || !(d_qr >= 0.0)) throw GeometryError("side lengths must be nonnegative");
  if (d_pq == 0.0 || d_pr == 0.0) throw GeometryError("model angle with a zero adjacent side");
  const double tol = triangle_tolerance(d_pq, d_pr, d_qr);
  if (d_qr > d_pq + d_pr + tol || d_pq > d_pr + d_qr + tol || d_pr > d_pq + d_qr + tol) return std::nullopt;
  if (k.kappa > 0.0 && d_pq + d_pr + d_qr >= 2.0 * pomega(k)) return std::nullopt;

  const double s = k.scale();
  const double b = s * d_pq, c = s * d_pr, a = s * d_qr;
  const double half = 0.5 * (a + b + c);
  const int sg = k.sign();
  const double fs = chart_f(sg, half);
  const double fa = chart_f(sg, std::max(0.0, half - a));
  const double fb = chart_f(sg, std::max(0.0, half - b));
  const double fc = chart_f(sg, std::max(0.0, half - c));
  return 2.0 * std::atan2(std::sqrt(std::max(0.0, fb * fc)), std::sqrt(std::max(0.0, fs * fa)));
}

double side_from_angle(double b, double c, double angle, Curvature k) {
  if (!(b >= 0.0) || !(c >= 0.0)) throw GeometryError("side lengths must be nonnegative");
  const double s = k.scale();
  const int sg = k.sign();
  const double sb = s * b, sc = s * c;
  const double h = std::sin(0.5 * std::clamp(angle, 0.0, std::numbers::pi));
  const double fd = chart_f(sg, 0.5 * (sb - sc));
  const double rhs = std::max(0.0, fd * fd + chart_f(sg, sb) * chart_f(sg, sc) * h * h);
  const double r = std::sqrt(rhs);
  double a;
  if (sg > 0) {
    a = 2.0 * std::asin(std::min(1.0, r));
  } else if (sg < 0) {
    a = 2.0 * std::asinh(r);
  } else {
    a = 2.0 * r;
  }
  return a / s;
}

std::optional<ModelTriangle> model_triangle(double d_pq, double d_qr, double d_rp, Curvature k) {
  if (!(d_pq >= 0.0) || !(d_qr >= 0.0) || !(d_rp >= 0.0)) throw GeometryError("side lengths must be nonnegative");
  const double tol = triangle_tolerance(d_pq, d_qr, d_rp);
  if (d_pq > d_qr + d_rp + tol || d_qr > d_pq + d_rp + tol || d_rp > d_pq + d_qr + tol)
    throw GeometryError("triangle inequality violated");
  if (k.kappa > 0.0 && d_pq + d_qr + d_rp >= 2.0 * pomega(k)) return std::nullopt;
  ModelTriangle t;
  t.curvature = k;
  t.pq = d_pq;
  t.qr = d_qr;
  t.rp = d_rp;
  if (d_pq > 0.0 && d_rp > 0.0) t.angle_p = model_angle(d_pq, d_rp, d_qr, k);
  if (d_pq > 0.0 && d_qr > 0.0) t.angle_q = model_angle(d_pq, d_qr, d_rp, k);
  if (d_rp > 0.0 && d_qr > 0.0) t.angle_r = model_angle(d_rp, d_qr, d_pq, k);
  return t;
}

ModelConfig realize_triangle(const ModelTriangle& t) {
  const ModelSpace plane(t.curvature, 2);
  const double alpha = t.angle_p.value_or(0.0);
  Vec q(2), r(2);
  q << t.pq, 0.0;
  r << t.rp * std::cos(alpha), t.rp * std::sin(alpha);
  return ModelConfig{t.curvature, 2, {plane.origin(), plane.from_origin_tangent(q), plane.from_origin_tangent(r)}};
}

}  // namespace alexcomp
