#pragma once

#include "alexcomp/model_space.hpp"

#include <optional>
#include <vector>

namespace alexcomp {

/**
 * Smooth functions of the distance to an anchor, with closed-form Riemannian
 * gradient and Hessian.
 *   Psi:         flat d^2/2, sphere (1 - cos sd)/s^2, hyperbolic (cosh sd - 1)/s^2
 *   HalfSquared: d^2/2 on every chart
 *   Cosh:        cosh(sd)/s^2 (hyperbolic only)
 */
enum class Potential { Psi, HalfSquared, Cosh };

/// Value of a potential at distance d.
double potential_value(Potential pot, Curvature k, double d);

struct PotentialJet {
  double value = 0.0;
  double dist = 0.0;
  Vec grad;  // coordinates in the tangent basis at q
  Mat hess;
};

PotentialJet potential_jet(const ModelSpace& s, Potential pot, const ModelPoint& q, const ModelPoint& anchor,
                           const Mat& basis);

/// One constraint P(d(q, anchor)) <= R(t).
struct BarrierConstraint {
  enum class Rhs {
    Shift,     // d <= r + t (R = Psi(r + t)); requires Potential::Psi
    Additive,  // P <= r + t
    Fixed      // P <= r, independent of t
  };
  ModelPoint anchor;
  double r = 0.0;
  Potential pot = Potential::Psi;
  Rhs rhs = Rhs::Shift;
};

struct BarrierProblem {
  std::vector<BarrierConstraint> constraints;
  /// Minimize t when empty, otherwise the potential to this anchor (no t variable).
  std::optional<ModelPoint> objective_anchor;
  Potential objective_pot = Potential::HalfSquared;
};

struct BarrierResult {
  ModelPoint point;
  double t = 0.0;
  int newton_steps = 0;
  bool ok = false;  // start was strictly feasible and the path was followed to the end
};

/**
 * Log-barrier path following with Riemannian Newton steps in normal
 * coordinates. The start must be strictly feasible when there is no t variable;
 * with a t variable it is raised above the start's constraint values.
 */
BarrierResult barrier_solve(const ModelSpace& s, const BarrierProblem& pb, const ModelPoint& start,
                            double gap = 1e-13);

/// max_i (d(q, y_i) - r_i)
double max_violation(const ModelSpace& s, const std::vector<ModelPoint>& y, const std::vector<double>& r,
                     const ModelPoint& q);

}  // namespace alexcomp
