#pragma once

#include "alexcomp/extension.hpp"
#include "alexcomp/finite_metric.hpp"
#include "alexcomp/model_space.hpp"

#include <cstdint>

namespace alexcomp {

/// Six points a, b, x, y, z, q that satisfy the (1+n) conclusion at kappa = 0
/// but cannot sit inside a nonnegatively curved space.
FiniteMetric ivanov_metric();

/// Center c with three tips at distance 1; tips pairwise at distance 2.
FiniteMetric tripod_metric();

struct SampledMetric {
  FiniteMetric metric;
  ModelConfig points;
};

/// n uniform points on the unit sphere S^dim with great-circle distances.
SampledMetric sphere_sample(int n, std::uint64_t seed, int dim = 2);

/// Vertices of a random weighted tree on n nodes, with path distances.
FiniteMetric tree_sample(int n, std::uint64_t seed);

/**
 * Equator points e0..e{n-1} of the unit hemisphere plus its pole N, with the equator
 * mapped isometrically onto the unit circle (kappa = 1, dim 1). N is left unassigned.
 */
PartialShortMap hemisphere_fixture(int n);

}  // namespace alexcomp
