#include "alexcomp/extension.hpp"

#include "alexcomp/minimax.hpp"
#include "alexcomp/sampling.hpp"
#include "alexcomp/trigonometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace alexcomp {

namespace {

ModelPoint frechet_start(const ModelSpace& s, const std::vector<ModelPoint>& y, const std::vector<double>& r) {
  ModelPoint q = y.front();
  for (int it = 0; it < 100; ++it) {
    Vec v = Vec::Zero(s.ambient_dim());
    double total = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double w = 1.0 / (1.0 + r[i]);
      try {
        v += w * s.log(q, y[i]);
        total += w;
      } catch (const GeometryError&) {
        // antipodal target: no preferred direction
      }
    }
    if (total == 0.0) break;
    v /= total;
    if (s.norm(v) < 1e-12) break;
    q = s.exp(q, v);
  }
  return q;
}

ModelPoint into_ball(const ModelSpace& s, const ModelPoint& q, const std::optional<ModelPoint>& z, double radius) {
  if (!z) return q;
  const double d = s.dist(*z, q);
  if (d <= radius) return q;
  return s.geodesic(*z, q, radius);
}

// Step of length t from q towards y; from the antipode every direction shortens the distance.
ModelPoint toward(const ModelSpace& s, const ModelPoint& q, const ModelPoint& y, double t) {
  try {
    return s.geodesic(q, y, t);
  } catch (const GeometryError&) {
    return s.exp(q, Vec(s.tangent_basis(q).col(0)), t);
  }
}

struct Candidate {
  ModelPoint q;
  double g = kInfinity;
};

Candidate subgradient(const ModelSpace& s, const std::vector<ModelPoint>& y, const std::vector<double>& r,
                      ModelPoint q, int iters, const std::optional<ModelPoint>& z, double ball) {
  Candidate best{q, max_violation(s, y, r, q)};
  double spread = 0.0;
  for (const auto& a : y) spread = std::max(spread, s.dist(a, y.front()));
  const double gamma0 = 0.25 * std::max(spread, 1e-3);
  for (int k = 0; k < iters; ++k) {
    std::size_t a = 0;
    double g = -kInfinity, da = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double d = s.dist(q, y[i]);
      if (d - r[i] > g) {
        g = d - r[i];
        a = i;
        da = d;
      }
    }
    if (g < best.g) best = {q, g};
    if (da == 0.0) break;
    // Polyak step with an estimated optimum below the best value seen
    const double step = std::min(da, g - best.g + gamma0 / (k + 1.0));
    q = into_ball(s, toward(s, q, y[a], step), z, ball);
  }
  const double g = max_violation(s, y, r, q);
  if (g < best.g) best = {q, g};
  return best;
}

}  // namespace

double feasibility_tolerance(const ExtensionInstance& inst) {
  double m = 0.0;
  for (double r : inst.radii) m = std::max(m, r);
  return 1e-7 * (1.0 + m);
}

ExtensionResult chebyshev_extend(const ExtensionInstance& inst, const ExtensionOptions& opt) {
  if (inst.targets.empty()) throw GeometryError("extension needs at least one target");
  if (inst.targets.size() != inst.radii.size()) throw GeometryError("target and radius counts differ");
  const ModelSpace s = inst.space();
  const Curvature k = inst.curvature;
  for (const ModelPoint& y : inst.targets)
    if (!s.contains(y)) throw GeometryError("target is not a point of the model space");
  for (double r : inst.radii)
    if (!(r >= 0.0) || !std::isfinite(r)) throw GeometryError("radii must be finite and nonnegative");

  const double ball = 0.5 * pomega(k);
  std::optional<ModelPoint> z;
  if (inst.center) {
    if (k.sign() <= 0) throw GeometryError("a center is only meaningful for kappa > 0");
    if (!s.contains(*inst.center)) throw GeometryError("center is not a point of the model space");
    for (const ModelPoint& y : inst.targets)
      if (s.dist(*inst.center, y) > ball + 1e-9) throw GeometryError("targets are not within pomega/2 of the center");
    z = inst.center;
  }

  ExtensionResult res;
  res.tol = opt.tol.value_or(feasibility_tolerance(inst));
  res.certified = k.sign() <= 0 || z.has_value();

  const auto& y = inst.targets;
  const auto& r = inst.radii;
  const ModelPoint warm = frechet_start(s, y, r);
  std::vector<ModelPoint> starts;
  if (k.sign() <= 0) {
    starts.push_back(warm);
  } else if (z) {
    starts.push_back(s.dist(*z, warm) < ball ? warm : *z);
  } else {
    starts.push_back(warm);
    for (const ModelPoint& t : y) starts.push_back(t);
    Rng rng(opt.seed);
    for (int i = 0; i < opt.random_starts; ++i) starts.push_back(random_sphere_point(s, rng));
  }

  BarrierProblem pb;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (r[i] < pomega(k)) pb.constraints.push_back({y[i], r[i], Potential::Psi, BarrierConstraint::Rhs::Shift});
  if (z)
    pb.constraints.push_back(
        {*z, potential_value(Potential::Psi, k, ball), Potential::Psi, BarrierConstraint::Rhs::Fixed});
  const bool has_shift = std::any_of(pb.constraints.begin(), pb.constraints.end(), [](const BarrierConstraint& c) {
    return c.rhs == BarrierConstraint::Rhs::Shift;
  });

  Candidate best;
  for (const ModelPoint& st : starts) {
    Candidate c = subgradient(s, y, r, st, opt.subgradient_iters, z, ball * (1.0 - 1e-6));
    if (has_shift) {
      const ModelPoint from = z ? into_ball(s, c.q, z, ball * (1.0 - 1e-6)) : c.q;
      const BarrierResult b = barrier_solve(s, pb, from);
      if (b.ok && (!z || s.dist(*z, b.point) <= ball + 1e-12)) {
        const double g = max_violation(s, y, r, b.point);
        if (g < c.g) c = {b.point, g};
      }
    }
    if (c.g < best.g) best = c;
  }

  res.point = best.q;
  res.defect = best.g;
  res.feasible = res.defect <= res.tol;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (s.dist(best.q, y[i]) - r[i] >= res.defect - res.tol) res.active.push_back(i);
  return res;
}

DualCertificate dual_certificate(const ExtensionInstance& inst, const ModelConfig& model, const WeightVector& alpha) {
  const Curvature k = inst.curvature;
  if (k.sign() > 0) throw GeometryError("the dual certificate is stated for kappa <= 0");
  const std::size_t n = inst.targets.size();
  if (n == 0 || model.points.size() != n || alpha.size() != static_cast<int>(n))
    throw GeometryError("targets, model points and weights must have the same count");
  if (model.curvature.kappa != k.kappa) throw GeometryError("model configuration has a different curvature");

  const double sc = k.scale();
  const FunctionArray fa(k, inst.dim, inst.targets,
                         k.sign() < 0 ? FunctionForm::CoshDist : FunctionForm::HalfSquaredDist);
  const ArgminResult am = bary_simplex(fa, alpha);
  const ModelSpace s = inst.space();
  DualCertificate out;
  out.z = am.point;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = s.dist(am.point, inst.targets[i]);
    out.h += alpha[static_cast<int>(i)] * (k.sign() < 0 ? std::cosh(sc * d) : 0.5 * d * d);
  }

  const ModelSpace ms = model.space();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double a = alpha[static_cast<int>(i)] * alpha[static_cast<int>(j)];
      const double d = ms.dist(model.points[i], model.points[j]);
      if (k.sign() < 0) {
        acc += a * std::cosh(sc * d);
      } else if (i < j) {
        acc += a * d * d;
      }
    }
  out.h_model = k.sign() < 0 ? std::sqrt(acc) : 0.5 * acc;
  out.slack = out.h_model - out.h;
  return out;
}

FourPointResult four_point_decision(const FourPointInput& in, Curvature k, FourPointDirection dir,
                                    const ExtensionOptions& opt) {
  const double check_tol = 1e-9 * (1.0 + *std::max_element(in.source.begin(), in.source.end()));
  for (int i = 0; i < 3; ++i)
    if (in.target[i] > in.source[i] + check_tol) throw GeometryError("f is not short on V3");
  if (dir == FourPointDirection::CAT && k.sign() > 0 &&
      !(in.source[0] + in.source[1] + in.source[2] < 2.0 * pomega(k)))
    throw GeometryError("perimeter of V3 is not below 2*pomega");

  // target vertices: 0 = p~ of model_triangle, 1 = q~, 2 = r~
  const auto tri = model_triangle(in.target[0], in.target[1], in.target[2], k);
  if (!tri) throw GeometryError("the target triangle has no model realization");
  FourPointResult res;
  res.triangle = realize_triangle(*tri);

  ExtensionInstance inst{k, 2, res.triangle.points, {in.radii[0], in.radii[1], in.radii[2]}, std::nullopt};
  const ExtensionResult e = chebyshev_extend(inst, opt);
  res.witness = e.point;
  res.defect = e.defect;
  res.tol = e.tol;
  res.feasible = e.feasible;
  return res;
}

double PartialShortMap::shortness_defect() const {
  const ModelSpace s = space();
  double worst = -kInfinity;
  for (auto a = assigned.begin(); a != assigned.end(); ++a)
    for (auto b = std::next(a); b != assigned.end(); ++b)
      worst = std::max(worst, s.dist(a->second, b->second) - source(a->first, b->first));
  return assigned.size() < 2 ? 0.0 : worst;
}

ExtendMapResult extend_map(const PartialShortMap& f, const std::vector<std::size_t>& new_points, OrderPolicy policy,
                           const ExtensionOptions& opt) {
  const ModelSpace s = f.space();
  for (const auto& [i, q] : f.assigned) {
    if (i >= f.source.size()) throw GeometryError("assigned index out of range");
    if (!s.contains(q)) throw GeometryError("assigned image is not a point of the target space");
  }
  std::vector<std::size_t> remaining = new_points;
  {
    std::vector<std::size_t> sorted = remaining;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw GeometryError("repeated new point");
  }
  for (std::size_t p : remaining)
    if (p >= f.source.size() || f.assigned.count(p)) throw GeometryError("new point is out of range or already assigned");

  double tol = 1e-7 * (1.0 + f.source.diameter());
  if (opt.tol) tol = *opt.tol;
  if (f.shortness_defect() > tol) throw GeometryError("the given map is not short");

  ExtendMapResult res;
  res.map = f;
  res.defect = -kInfinity;
  while (!remaining.empty()) {
    auto pick = remaining.begin();
    if (policy == OrderPolicy::Greedy) {
      auto score = [&](std::size_t p) {
        int c = 0;
        for (const auto& [i, q] : res.map.assigned)
          if (std::isfinite(f.source(p, i))) ++c;
        return c;
      };
      pick = std::min_element(remaining.begin(), remaining.end(), [&](std::size_t a, std::size_t b) {
        const int sa = score(a), sb = score(b);
        if (sa != sb) return sa > sb;
        return f.source.label(a) < f.source.label(b);
      });
    }
    const std::size_t p = *pick;
    remaining.erase(pick);
    res.order.push_back(p);

    if (res.map.assigned.empty()) {
      res.map.assigned[p] = f.center ? *f.center : s.origin();
      continue;
    }
    ExtensionInstance inst{f.curvature, f.dim, {}, {}, f.center};
    std::vector<std::size_t> idx;
    for (const auto& [i, q] : res.map.assigned) {
      idx.push_back(i);
      inst.targets.push_back(q);
      inst.radii.push_back(f.source(p, i));
    }
    ExtensionOptions o = opt;
    o.tol = tol;
    const ExtensionResult e = chebyshev_extend(inst, o);
    res.defect = std::max(res.defect, e.defect);
    if (!e.feasible) {
      res.failed_point = p;
      res.defect = e.defect;
      res.best_candidate = e.point;
      for (std::size_t a : e.active) res.blocking.push_back(idx[a]);
      res.shortness = res.map.shortness_defect();
      return res;
    }
    res.map.assigned[p] = e.point;
  }
  if (!std::isfinite(res.defect)) res.defect = 0.0;
  // shortness is checked on every pair, not only the incremental ones
  res.shortness = res.map.shortness_defect();
  res.success = res.shortness <= tol;
  return res;
}

}  // namespace alexcomp
