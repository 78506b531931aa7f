#pragma once

#include "alexcomp/model_space.hpp"

namespace alexcomp {

/// Outcome of realizing a distance matrix in a model space.
struct Embedding {
  bool feasible = false;
  ModelConfig config;         // valid only when feasible
  double min_eigenvalue = 0;  // most negative Gram eigenvalue that must be >= 0
  double residual = 0;        // max |realized - given| distance
};

/**
 * Realize a symmetric distance matrix in the model space of dimension dim.
 *
 * Flat data uses the Gram matrix of differences from point 0; kappa > 0 the
 * cosine Gram matrix; kappa < 0 the matrix -cosh(d), which must have exactly
 * one negative eigenvalue. Throws for kappa > 0 when a distance reaches pomega.
 */
Embedding embed_points(const Mat& d, Curvature k, int dim, double tol = 1e-9);

/// Four points in the three-dimensional model space.
Embedding embed_simplex(const Mat& d4, Curvature k, double tol = 1e-9);

}  // namespace alexcomp
