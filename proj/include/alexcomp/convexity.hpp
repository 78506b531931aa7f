#pragma once

#include "alexcomp/extension.hpp"
#include "alexcomp/model_space.hpp"

#include <optional>
#include <vector>

namespace alexcomp {

/// Finite family of closed balls B[c_i, r_i]; for kappa > 0 every radius is at most pomega/2.
struct BallSystem {
  Curvature curvature;
  int dim = 0;
  std::vector<ModelPoint> centers;
  std::vector<double> radii;

  ModelSpace space() const { return ModelSpace(curvature, dim); }
  /// Throws GeometryError on an empty system, mismatched sizes or bad radii.
  void validate() const;
};

/// Nearest point of B[c, r] to p.
ModelPoint project_to_ball(const ModelSpace& s, const ModelPoint& c, double r, const ModelPoint& p);

struct ProjectionOptions {
  std::optional<ModelPoint> start;  // used when strictly inside every ball
  std::optional<double> tol;        // default: feasibility_tolerance of the system
  std::uint64_t seed = 0;
};

struct ProjectionResult {
  bool empty = false;
  ModelPoint point;
  double distance = 0.0;
  double defect = 0.0;  // minimax defect of the system; > tol means empty
  double tol = 0.0;
  bool certified = false;
};

/**
 * Unique nearest point of the intersection to p.
 *
 * Feasibility comes from chebyshev_extend with targets c_i and radii r_i. A system
 * whose intersection has no interior (defect within tol of 0) returns the
 * Chebyshev point; otherwise a barrier solve minimizes |qp|^2/2 subject to
 * Psi(|q c_i|) <= Psi(r_i).
 */
ProjectionResult closest_point(const BallSystem& bs, const ModelPoint& p, const ProjectionOptions& opt = {});

struct HellyResult {
  bool feasible = false;
  std::optional<ModelPoint> common_point;
  std::vector<std::size_t> subfamily;  // indices with empty intersection when infeasible
  double defect = 0.0;                 // minimax defect of the subfamily (or of the system)
  double tol = 0.0;
  bool certified = false;
};

/// Common point, or a subfamily grown greedily from the most violated pair and then pruned.
HellyResult helly_witness(const BallSystem& bs, const ExtensionOptions& opt = {});

}  // namespace alexcomp
