#include "alexcomp/folding.hpp"

#include <algorithm>
#include <cmath>

namespace alexcomp {

namespace {

Vec cross3(const Vec& a, const Vec& b) {
  Vec c(3);
  c << a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0];
  return c;
}

constexpr double kInsideTol = 1e-10;

}  // namespace

double signed_side(const ModelSpace& space, const Halfspace& h, const ModelPoint& x) {
  const double s = space.curvature().scale();
  switch (space.chart()) {
    case Chart::Sphere: return std::asin(std::clamp(h.normal.dot(x.coords), -1.0, 1.0)) / s;
    case Chart::Hyperboloid: return std::asinh(minkowski(h.normal, x.coords)) / s;
    default: return h.normal.dot(x.coords) - h.offset;
  }
}

ModelPoint fold(const ModelSpace& space, const Halfspace& h, const ModelPoint& x) {
  if (signed_side(space, h, x) >= 0.0) return x;
  ModelPoint y = x;
  switch (space.chart()) {
    case Chart::Sphere: y.coords -= 2.0 * h.normal.dot(x.coords) * h.normal; break;
    case Chart::Hyperboloid: y.coords -= 2.0 * minkowski(h.normal, x.coords) * h.normal; break;
    default: y.coords -= 2.0 * (h.normal.dot(x.coords) - h.offset) * h.normal; break;
  }
  return y;
}

Halfspace halfspace_through(const ModelSpace& plane, const ModelPoint& a, const ModelPoint& b,
                            const ModelPoint& inside) {
  if (plane.dim() != 2) throw GeometryError("halfspace_through needs a model plane");
  Halfspace h;
  switch (plane.chart()) {
    case Chart::Flat: {
      const Vec t = b.coords - a.coords;
      Vec n(2);
      n << -t[1], t[0];
      if (n.norm() == 0.0) throw GeometryError("degenerate side");
      h.normal = n.normalized();
      h.offset = h.normal.dot(a.coords);
      break;
    }
    case Chart::Sphere: {
      const Vec n = cross3(a.coords, b.coords);
      if (n.norm() < 1e-14) throw GeometryError("degenerate side");
      h.normal = n.normalized();
      break;
    }
    case Chart::Hyperboloid: {
      Vec n = cross3(a.coords, b.coords);
      n[0] = -n[0];
      const double q = minkowski(n, n);
      if (!(q > 1e-28)) throw GeometryError("degenerate side");
      h.normal = n / std::sqrt(q);
      break;
    }
  }
  if (signed_side(plane, h, inside) < 0.0) {
    h.normal = -h.normal;
    h.offset = -h.offset;
  }
  return h;
}

FoldResult fold_into_triangle(const ModelSpace& plane, const ModelPoint& x, const std::array<ModelPoint, 3>& tri) {
  if (plane.curvature().kappa > 0.0) {
    const double per = plane.dist(tri[0], tri[1]) + plane.dist(tri[1], tri[2]) + plane.dist(tri[2], tri[0]);
    if (per >= 2.0 * pomega(plane.curvature())) throw GeometryError("triangle perimeter too large");
  }
  std::array<Halfspace, 3> sides;
  double altitude = kInfinity;
  for (int i = 0; i < 3; ++i) {
    sides[i] = halfspace_through(plane, tri[(i + 1) % 3], tri[(i + 2) % 3], tri[i]);
    altitude = std::min(altitude, signed_side(plane, sides[i], tri[i]));
  }
  if (!(altitude > 0.0)) throw GeometryError("degenerate triangle");
  double diameter = 0.0;
  for (int i = 0; i < 3; ++i) {
    diameter = std::max(diameter, plane.dist(x, tri[i]));
    diameter = std::max(diameter, plane.dist(tri[i], tri[(i + 1) % 3]));
  }
  const int cap = static_cast<int>(std::ceil(10.0 * (1.0 + diameter / altitude)));

  auto worst = [&](const ModelPoint& p) {
    double w = kInfinity;
    for (const Halfspace& h : sides) w = std::min(w, signed_side(plane, h, p));
    return w;
  };

  FoldResult r{x, 0, 0.0, false};
  int side = 0;
  while (worst(r.point) < -kInsideTol && r.iterations < cap) {
    if (signed_side(plane, sides[side], r.point) < -kInsideTol) {
      r.point = fold(plane, sides[side], r.point);
      ++r.iterations;
    }
    side = (side + 1) % 3;
  }
  r.residual = std::max(0.0, -worst(r.point));
  r.converged = r.residual <= kInsideTol;
  return r;
}

}  // namespace alexcomp
