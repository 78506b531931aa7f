#include "alexcomp/barycentric.hpp"

#include "alexcomp/minimax.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace alexcomp {

namespace {

Potential potential_of(FunctionForm f) {
  return f == FunctionForm::CoshDist ? Potential::Cosh : Potential::HalfSquared;
}

}  // namespace

WeightVector::WeightVector(const Vec& x) {
  if (x.size() == 0) throw GeometryError("empty weight vector");
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!(x[i] >= 0.0) || !std::isfinite(x[i])) throw GeometryError("weights must be finite and nonnegative");
  const double total = x.sum();
  if (!(total > 0.0)) throw GeometryError("weights sum to zero");
  x_ = x / total;
}

WeightVector WeightVector::uniform(int n) { return WeightVector(Vec::Ones(n)); }

WeightVector WeightVector::vertex(int n, int i) {
  Vec x = Vec::Zero(n);
  x[i] = 1.0;
  return WeightVector(x);
}

FunctionArray::FunctionArray(Curvature k, int d, std::vector<ModelPoint> a, FunctionForm f, double lam)
    : curvature(k), dim(d), anchors(std::move(a)), form(f), lambda(lam) {
  if (anchors.empty()) throw GeometryError("function array needs at least one anchor");
  if (!(lambda > 0.0)) throw GeometryError("convexity parameter must be positive");
  if (form == FunctionForm::CoshDist && k.sign() >= 0)
    throw GeometryError("the cosh form is only available on the hyperbolic chart");
  const ModelSpace s = space();
  for (const ModelPoint& p : anchors)
    if (!s.contains(p)) throw GeometryError("anchor is not a point of the model space");
}

double FunctionArray::value(std::size_t i, const ModelPoint& q) const {
  return potential_value(potential_of(form), curvature, space().dist(anchors.at(i), q));
}

Vec FunctionArray::values(const ModelPoint& q) const {
  Vec v(size());
  for (std::size_t i = 0; i < size(); ++i) v[i] = value(i, q);
  return v;
}

ArgminResult argmin_strongly_convex(const FunctionArray& fa, const Vec& weights, const ModelPoint& start,
                                    const ArgminOptions& opt) {
  if (weights.size() != static_cast<Eigen::Index>(fa.size())) throw GeometryError("weight count mismatch");
  const ModelSpace s = fa.space();
  const Potential pot = potential_of(fa.form);
  ArgminResult res;
  res.point = start;
  for (int it = 0; it < opt.max_iter; ++it) {
    const Mat basis = s.tangent_basis(res.point);
    Vec g = Vec::Zero(s.dim());
    double lip = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < fa.size(); ++i) {
      if (weights[i] == 0.0) continue;
      const PotentialJet j = potential_jet(s, pot, res.point, fa.anchors[i], basis);
      g += weights[i] * j.grad;
      mag += weights[i] * j.grad.norm();
      Eigen::SelfAdjointEigenSolver<Mat> es(j.hess, Eigen::EigenvaluesOnly);
      lip += weights[i] * std::max(1.0, es.eigenvalues().maxCoeff());
    }
    res.grad_norm = g.norm();
    res.iterations = it;
    if (res.grad_norm <= opt.grad_tol * std::max(1.0, mag)) {
      res.converged = true;
      return res;
    }
    const double step = 1.0 / (fa.lambda + lip);
    res.point = s.exp(res.point, basis * (-step * g));
  }
  return res;
}

ArgminResult bary_simplex(const FunctionArray& fa, const WeightVector& x, const ArgminOptions& opt) {
  if (x.size() != static_cast<int>(fa.size())) throw GeometryError("weight count mismatch");
  Eigen::Index top = 0;
  x.x().maxCoeff(&top);
  return argmin_strongly_convex(fa, x.x(), fa.anchors[top], opt);
}

bool supset_dominates(const Vec& v, const Vec& w) {
  if (v.size() != w.size()) throw GeometryError("array length mismatch");
  return (v.array() >= w.array()).all();
}

ArgminResult h_v_argmin(const FunctionArray& fa, const Vec& v) {
  if (v.size() != static_cast<Eigen::Index>(fa.size())) throw GeometryError("array length mismatch");
  const ModelSpace s = fa.space();
  BarrierProblem pb;
  for (std::size_t i = 0; i < fa.size(); ++i)
    pb.constraints.push_back({fa.anchors[i], v[i], potential_of(fa.form), BarrierConstraint::Rhs::Additive});
  const ModelPoint start = bary_simplex(fa, WeightVector::uniform(static_cast<int>(fa.size()))).point;
  const BarrierResult b = barrier_solve(s, pb, start);
  ArgminResult res;
  res.point = b.point;
  res.iterations = b.newton_steps;
  res.converged = b.ok;
  return res;
}

}  // namespace alexcomp
