#include "alexcomp/comparisons.hpp"
#include "alexcomp/trigonometry.hpp"

#include <cmath>
#include <numbers>

namespace alexcomp {

namespace {

double wrap_abs(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return std::abs(a);
}

OverlapResult reject(std::string why) {
  OverlapResult r;
  r.rejected = true;
  r.reason = std::move(why);
  return r;
}

}  // namespace

OverlapResult overlap_check(const OverlapInput& in, Curvature k, double tol) {
  const auto& L = in.sides;
  // rho[v]: common distance from x^v to the two apexes adjacent to it
  std::array<double, 3> rho{};
  for (int v = 0; v < 3; ++v) {
    const int i = (v + 1) % 3;  // apex p^i has x^v as its second vertex
    const int j = (v + 2) % 3;  // apex p^j has x^v as its first vertex
    const double a = in.apex[i][1], b = in.apex[j][0];
    if (std::abs(a - b) > tol * (1.0 + a + b))
      return reject("hypothesis (i): apex distances to x" + std::to_string(v + 1) + " differ");
    rho[v] = 0.5 * (a + b);
    if (!(rho[v] > tol)) return reject("hypothesis (iii): an apex coincides with a vertex");
  }
  for (double l : L)
    if (!(l > tol)) return reject("degenerate triangle x1 x2 x3");

  const auto tri = [&]() -> std::optional<ModelTriangle> {
    try {
      return model_triangle(L[2], L[0], L[1], k);  // vertices x1, x2, x3
    } catch (const GeometryError&) {
      return std::nullopt;
    }
  }();
  if (!tri) return reject("triangle x1 x2 x3 is not defined");
  for (const auto& a : {tri->angle_p, tri->angle_q, tri->angle_r})
    if (!a || *a < tol || *a > std::numbers::pi - tol) return reject("degenerate triangle x1 x2 x3");

  OverlapResult res;
  // apex triangles p^i x^j x^k and their angles
  std::array<double, 3> at_j{}, at_k{};  // base angles at x^j and x^k
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, kk = (i + 2) % 3;
    const auto apex = model_angle(rho[j], rho[kk], L[i], k);
    const auto bj = model_angle(rho[j], L[i], rho[kk], k);
    const auto bk = model_angle(rho[kk], L[i], rho[j], k);
    if (!apex || !bj || !bk) return reject("apex triangle " + std::to_string(i + 1) + " is not realizable");
    if (*bj < tol || *bk < tol || *bj > std::numbers::pi - tol || *bk > std::numbers::pi - tol ||
        *apex < tol || *apex > std::numbers::pi - tol)
      return reject("hypothesis (iii): apex " + std::to_string(i + 1) + " lies on the line of its base");
    res.apex_angle[i] = *apex;
    at_j[i] = *bj;
    at_k[i] = *bk;
  }
  // hinge condition at each x^i: angle(x^i; x^j, p^k) + angle(x^i; p^j, x^k) < pi
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, kk = (i + 2) % 3;
    const double h = at_j[kk] + at_k[j];  // p^k sits over [x^i x^j], p^j over [x^k x^i]
    if (!(h < std::numbers::pi - tol)) return reject("hypothesis (iii) fails at x" + std::to_string(i + 1));
  }

  // realize everything in the model plane
  const ModelSpace plane(k, 2);
  const ModelConfig base = realize_triangle(*tri);
  std::array<ModelPoint, 3> x{base.points[0], base.points[1], base.points[2]};
  std::array<ModelPoint, 3> p;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, kk = (i + 2) % 3;
    const Vec u = plane.log(x[j], x[kk]);
    const Vec ui = u / plane.norm(u);
    Vec w = plane.log(x[j], x[i]);
    w -= plane.inner(ui, w) * ui;
    w /= plane.norm(w);  // towards the side of x^i (hypothesis (ii))
    p[i] = plane.exp(x[j], std::cos(at_j[i]) * ui + std::sin(at_j[i]) * w, rho[j]);
  }
  res.config = ModelConfig{k, 2, {x[0], x[1], x[2], p[0], p[1], p[2]}};

  // rotation criterion at each vertex
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, kk = (i + 2) % 3;
    const Mat basis = plane.tangent_basis(x[i]);
    auto phase = [&](const ModelPoint& q) {
      const Vec v = plane.log(x[i], q);
      return std::atan2(plane.inner(basis.col(1), v), plane.inner(basis.col(0), v));
    };
    const double turn = phase(p[j]) - phase(p[kk]);  // rotation taking p^k to p^j
    const double rotated = wrap_abs(phase(x[j]) + turn - phase(x[kk]));
    const double dij = plane.dist(x[i], x[j]), dik = plane.dist(x[i], x[kk]);
    const double moved = side_from_angle(dij, dik, rotated, k);
    res.margin[i] = L[i] - moved;
    res.overlap[i] = !(res.margin[i] > 0.0);
  }
  res.angle_sum = res.apex_angle[0] + res.apex_angle[1] + res.apex_angle[2];
  return res;
}

}  // namespace alexcomp
