#pragma once

#include "alexcomp/model_space.hpp"

#include <array>

namespace alexcomp {

/// Closed halfspace bounded by a totally geodesic hyperplane.
///
/// Flat: {x : <normal, x> >= offset}. Sphere and hyperboloid: the hyperplane
/// passes through the ambient origin, so {x : <normal, x> >= 0} in the chart's
/// inner product, with the normal of unit (spacelike) length.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

double signed_side(const ModelSpace& space, const Halfspace& h, const ModelPoint& x);
/// Identity on the halfspace, reflection across its boundary elsewhere.
ModelPoint fold(const ModelSpace& space, const Halfspace& h, const ModelPoint& x);
/// Halfspace of the model plane bounded by the line through a and b containing inside.
Halfspace halfspace_through(const ModelSpace& plane, const ModelPoint& a, const ModelPoint& b,
                            const ModelPoint& inside);

struct FoldResult {
  ModelPoint point;
  int iterations = 0;
  double residual = 0.0;  // largest signed distance outside a side
  bool converged = false;
};

/// Fold x across the sides of a triangle in the model plane until it lies inside.
FoldResult fold_into_triangle(const ModelSpace& plane, const ModelPoint& x, const std::array<ModelPoint, 3>& tri);

}  // namespace alexcomp
