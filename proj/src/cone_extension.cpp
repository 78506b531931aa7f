#include "alexcomp/extension.hpp"

#include "alexcomp/minimax.hpp"
#include "alexcomp/sampling.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace alexcomp {

namespace {

struct Lift {
  Vec s;
  double margin = -kInfinity;
};

// maximize min_i (<s, y_i> - c_i) over the unit ball, by a log barrier
Lift solve_lift(const std::vector<Vec>& y, const std::vector<double>& c) {
  const auto D = y.front().size();
  const auto n = static_cast<Eigen::Index>(y.size());
  Vec x = Vec::Zero(D + 1);  // (s, tau)
  x[D] = -*std::max_element(c.begin(), c.end()) - 1.0;

  auto feasible = [&](const Vec& v) {
    if (!(v.head(D).squaredNorm() < 1.0)) return false;
    for (Eigen::Index i = 0; i < n; ++i)
      if (!(y[i].dot(v.head(D)) - c[i] - v[D] > 0.0)) return false;
    return true;
  };
  auto value = [&](const Vec& v, double mu) {
    double f = -v[D] / mu - std::log(1.0 - v.head(D).squaredNorm());
    for (Eigen::Index i = 0; i < n; ++i) f -= std::log(y[i].dot(v.head(D)) - c[i] - v[D]);
    return f;
  };

  for (double mu = 1.0; mu > 1e-15; mu *= 0.1) {
    for (int it = 0; it < 100; ++it) {
      Vec g = Vec::Zero(D + 1);
      Mat H = Mat::Zero(D + 1, D + 1);
      g[D] = -1.0 / mu;
      const double b = 1.0 - x.head(D).squaredNorm();
      g.head(D) += 2.0 * x.head(D) / b;
      H.topLeftCorner(D, D) += 2.0 * Mat::Identity(D, D) / b + 4.0 * x.head(D) * x.head(D).transpose() / (b * b);
      for (Eigen::Index i = 0; i < n; ++i) {
        Vec a(D + 1);
        a << y[i], -1.0;
        const double w = a.dot(x) - c[i];
        g -= a / w;
        H += a * a.transpose() / (w * w);
      }
      const Vec dir = -H.ldlt().solve(g);
      const double slope = g.dot(dir);
      if (!(slope < 0.0) || -slope < 1e-20) break;
      const double f0 = value(x, mu);
      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        const Vec t = x + alpha * dir;
        if (feasible(t) && value(t, mu) <= f0 + 1e-4 * alpha * slope) {
          x = t;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
  }
  Lift out{x.head(D), kInfinity};
  for (Eigen::Index i = 0; i < n; ++i) out.margin = std::min(out.margin, y[i].dot(out.s) - c[i]);
  return out;
}

}  // namespace

ConeResult spherical_extend_via_cone(const ExtensionInstance& inst, const ExtensionOptions& opt) {
  const Curvature k = inst.curvature;
  if (k.sign() <= 0) throw GeometryError("the cone route needs kappa > 0");
  if (inst.targets.empty() || inst.targets.size() != inst.radii.size())
    throw GeometryError("targets and radii must be nonempty and of equal count");
  const ModelSpace sp = inst.space();
  const double sc = k.scale();
  const double half = 0.5 * pomega(k);

  std::vector<Vec> y;
  std::vector<double> c;
  for (std::size_t i = 0; i < inst.targets.size(); ++i) {
    if (!sp.contains(inst.targets[i])) throw GeometryError("target is not a point of the model space");
    y.push_back(inst.targets[i].coords);
    c.push_back(std::cos(std::min(sc * inst.radii[i], std::numbers::pi)));
  }

  ConeResult res;
  const Lift lift = solve_lift(y, c);
  res.lift_margin = lift.margin;
  res.lift_norm = lift.s.norm();

  // the direction to slide along
  if (inst.center) {
    for (const ModelPoint& t : inst.targets)
      if (sp.dist(*inst.center, t) > half + 1e-9) throw GeometryError("targets are not within pomega/2 of the center");
    res.center = inst.center;
  } else {
    ExtensionInstance cap{k, inst.dim, inst.targets, std::vector<double>(inst.targets.size(), 0.0), std::nullopt};
    const ExtensionResult e = chebyshev_extend(cap, opt);
    if (e.defect <= half + 1e-12) res.center = e.point;
  }

  Vec sbar;
  if (res.center) {
    const Vec& z = res.center->coords;
    const double sz = lift.s.dot(z);
    const double lam = -sz + std::sqrt(std::max(0.0, sz * sz + 1.0 - lift.s.squaredNorm()));
    sbar = lift.s + lam * z;
    res.note = "slid along the center direction";
  } else if (res.lift_norm > 1e-9) {
    sbar = lift.s / res.lift_norm;
    res.note = "no center within pomega/2; radial projection of the lift";
  } else {
    res.degenerate = true;
    res.note = "degenerate lift: s = 0 and no center; minimized max(cos r - <s,y>) on the sphere";
    BarrierProblem pb;
    for (std::size_t i = 0; i < y.size(); ++i)
      pb.constraints.push_back({inst.targets[i], potential_value(Potential::Psi, k, std::min(inst.radii[i], pomega(k))),
                                Potential::Psi, BarrierConstraint::Rhs::Additive});
    std::vector<ModelPoint> starts = inst.targets;
    Rng rng(opt.seed);
    for (int i = 0; i < opt.random_starts; ++i) starts.push_back(random_sphere_point(sp, rng));
    double best = kInfinity;
    for (const ModelPoint& st : starts) {
      const BarrierResult b = barrier_solve(sp, pb, st);
      double v = -kInfinity;
      for (std::size_t i = 0; i < y.size(); ++i) v = std::max(v, c[i] - y[i].dot(b.point.coords));
      if (v < best) {
        best = v;
        sbar = b.point.coords;
      }
    }
  }
  res.point = sp.point(sbar / sbar.norm());
  res.defect = max_violation(sp, inst.targets, inst.radii, res.point);
  return res;
}

ConeResult spherical_extend_via_cone(const PartialShortMap& f, std::size_t p, const ExtensionOptions& opt) {
  if (p >= f.source.size()) throw GeometryError("point index out of range");
  ExtensionInstance inst{f.curvature, f.dim, {}, {}, f.center};
  for (const auto& [i, q] : f.assigned) {
    inst.targets.push_back(q);
    inst.radii.push_back(f.source(p, i));
  }
  return spherical_extend_via_cone(inst, opt);
}

}  // namespace alexcomp
