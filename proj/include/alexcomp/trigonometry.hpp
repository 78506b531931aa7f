#pragma once

#include "alexcomp/model_space.hpp"

#include <array>
#include <optional>

namespace alexcomp {

/// Model angle at p of the triangle with |pq| = d_pq, |pr| = d_pr, |qr| = d_qr.
///
/// Returns nullopt when the model triangle is not defined: kappa > 0 and the
/// perimeter is at least 2*pomega, or the triangle inequality fails.
/// Throws GeometryError when an adjacent side is zero.
std::optional<double> model_angle(double d_pq, double d_pr, double d_qr, Curvature k);

/// Length of the side opposite an angle enclosed by sides b and c.
double side_from_angle(double b, double c, double angle, Curvature k);

/**
 * @brief Comparison triangle with vertices p, q, r.
 *
 * Sides are named by their endpoints; an angle is empty when one of its
 * adjacent sides vanishes.
 */
struct ModelTriangle {
  Curvature curvature;
  double pq = 0.0, qr = 0.0, rp = 0.0;
  std::optional<double> angle_p, angle_q, angle_r;
};

/// nullopt iff kappa > 0 and perimeter >= 2*pomega. Throws if the triangle inequality fails.
std::optional<ModelTriangle> model_triangle(double d_pq, double d_qr, double d_rp, Curvature k);

/// Vertices p, q, r in the model plane: p at the origin, q along the first axis.
ModelConfig realize_triangle(const ModelTriangle& t);

/// Triangle inequality slack tolerance used by the trigonometry routines.
double triangle_tolerance(double a, double b, double c);

}  // namespace alexcomp
