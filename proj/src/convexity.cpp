#include "alexcomp/convexity.hpp"

#include "alexcomp/minimax.hpp"

#include <algorithm>
#include <cmath>

namespace alexcomp {

namespace {

ExtensionInstance as_instance(const BallSystem& bs, const std::vector<std::size_t>& idx) {
  ExtensionInstance inst{bs.curvature, bs.dim, {}, {}, std::nullopt};
  for (std::size_t i : idx) {
    inst.targets.push_back(bs.centers[i]);
    inst.radii.push_back(bs.radii[i]);
  }
  return inst;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

bool strictly_inside(const ModelSpace& s, const BallSystem& bs, const ModelPoint& q) {
  for (std::size_t i = 0; i < bs.centers.size(); ++i)
    if (!(s.dist(q, bs.centers[i]) < bs.radii[i])) return false;
  return true;
}

}  // namespace

void BallSystem::validate() const {
  if (centers.empty()) throw GeometryError("ball system is empty");
  if (centers.size() != radii.size()) throw GeometryError("center and radius counts differ");
  const ModelSpace s = space();
  const double cap = curvature.sign() > 0 ? 0.5 * pomega(curvature) : kInfinity;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (!s.contains(centers[i])) throw GeometryError("center is not a point of the model space");
    if (!(radii[i] >= 0.0) || !std::isfinite(radii[i])) throw GeometryError("radii must be finite and nonnegative");
    if (radii[i] > cap * (1.0 + 1e-12)) throw GeometryError("for kappa > 0 radii must be at most pomega/2");
  }
}

ModelPoint project_to_ball(const ModelSpace& s, const ModelPoint& c, double r, const ModelPoint& p) {
  const double d = s.dist(c, p);
  if (d <= r) return p;
  return s.geodesic(c, p, r);
}

ProjectionResult closest_point(const BallSystem& bs, const ModelPoint& p, const ProjectionOptions& opt) {
  bs.validate();
  const ModelSpace s = bs.space();
  if (!s.contains(p)) throw GeometryError("query point is not a point of the model space");

  const ExtensionInstance inst = as_instance(bs, all_indices(bs.centers.size()));
  ProjectionResult res;
  res.tol = opt.tol.value_or(feasibility_tolerance(inst));

  ExtensionOptions eo;
  eo.seed = opt.seed;
  eo.tol = res.tol;
  const ExtensionResult cheb = chebyshev_extend(inst, eo);
  res.defect = cheb.defect;
  res.certified = cheb.certified;
  if (cheb.defect > res.tol) {
    res.empty = true;
    res.point = cheb.point;
    res.distance = kInfinity;
    return res;
  }

  if (max_violation(s, inst.targets, inst.radii, p) <= 0.0) {
    res.point = p;
    return res;
  }
  if (cheb.defect >= -res.tol) {
    // no interior: the intersection is (numerically) the Chebyshev point
    res.point = cheb.point;
    res.distance = s.dist(p, res.point);
    return res;
  }

  BarrierProblem pb;
  pb.objective_anchor = p;
  pb.objective_pot = Potential::HalfSquared;
  for (std::size_t i = 0; i < bs.centers.size(); ++i)
    pb.constraints.push_back({bs.centers[i], potential_value(Potential::Psi, bs.curvature, bs.radii[i]), Potential::Psi,
                              BarrierConstraint::Rhs::Fixed});
  const ModelPoint start = opt.start && strictly_inside(s, bs, *opt.start) ? *opt.start : cheb.point;
  const BarrierResult b = barrier_solve(s, pb, start);
  res.point = b.ok ? b.point : cheb.point;
  res.distance = s.dist(p, res.point);
  return res;
}

HellyResult helly_witness(const BallSystem& bs, const ExtensionOptions& opt) {
  bs.validate();
  const ModelSpace s = bs.space();
  const std::size_t n = bs.centers.size();
  HellyResult res;
  res.tol = opt.tol.value_or(feasibility_tolerance(as_instance(bs, all_indices(n))));
  ExtensionOptions eo = opt;
  eo.tol = res.tol;

  const ExtensionResult whole = chebyshev_extend(as_instance(bs, all_indices(n)), eo);
  if (whole.defect <= res.tol) {
    res.feasible = true;
    res.common_point = whole.point;
    res.defect = whole.defect;
    res.certified = whole.certified;
    res.subfamily = all_indices(n);
    return res;
  }

  // grow from the most violated pair
  std::vector<std::size_t> fam;
  if (n == 1) {
    fam = {0};
  } else {
    double worst = -kInfinity;
    std::size_t bi = 0, bj = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = s.dist(bs.centers[i], bs.centers[j]) - bs.radii[i] - bs.radii[j];
        if (v > worst) {
          worst = v;
          bi = i;
          bj = j;
        }
      }
    fam = {bi, bj};
  }
  ExtensionResult cur = chebyshev_extend(as_instance(bs, fam), eo);
  while (cur.defect <= res.tol && fam.size() < n) {
    std::size_t add = n;
    double worst = -kInfinity;
    for (std::size_t k = 0; k < n; ++k) {
      if (std::find(fam.begin(), fam.end(), k) != fam.end()) continue;
      const double v = s.dist(cur.point, bs.centers[k]) - bs.radii[k];
      if (v > worst) {
        worst = v;
        add = k;
      }
    }
    fam.push_back(add);
    cur = chebyshev_extend(as_instance(bs, fam), eo);
  }
  if (cur.defect <= res.tol) cur = whole;  // the full family is the only witness found

  // prune while the rest stays empty
  for (std::size_t pos = 0; pos < fam.size() && fam.size() > 1;) {
    std::vector<std::size_t> trial = fam;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(pos));
    const ExtensionResult e = chebyshev_extend(as_instance(bs, trial), eo);
    if (e.defect > res.tol) {
      fam = std::move(trial);
      cur = e;
    } else {
      ++pos;
    }
  }
  std::sort(fam.begin(), fam.end());
  res.subfamily = fam;
  res.defect = cur.defect;
  res.certified = cur.certified;
  return res;
}

}  // namespace alexcomp
