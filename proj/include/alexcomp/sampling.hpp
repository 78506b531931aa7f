#pragma once

#include "alexcomp/model_space.hpp"

#include <random>

namespace alexcomp {

using Rng = std::mt19937_64;

/// Uniform direction in R^n.
Vec random_unit(Rng& rng, int n);

/// Point at distance <= radius from the origin, uniform direction, volume-like radial law.
ModelPoint random_point(const ModelSpace& space, Rng& rng, double radius);

/// Point of the given ball around center (same radial law as random_point).
ModelPoint random_point_near(const ModelSpace& space, Rng& rng, const ModelPoint& center, double radius);

/// Uniform point on the whole sphere chart.
ModelPoint random_sphere_point(const ModelSpace& space, Rng& rng);

}  // namespace alexcomp
