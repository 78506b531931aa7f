#include "alexcomp/embedding.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace alexcomp {

namespace {

void validate(const Mat& d) {
  if (d.rows() != d.cols()) throw GeometryError("distance matrix must be square");
  if (!d.allFinite()) throw GeometryError("distance matrix has non-finite entries");
  if ((d.array() < 0.0).any()) throw GeometryError("negative distance");
  if ((d - d.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + d.maxCoeff()))
    throw GeometryError("distance matrix is not symmetric");
}

double residual_of(const ModelConfig& c, const Mat& d) {
  return (c.distances() - d).cwiseAbs().maxCoeff();
}

}  // namespace

Embedding embed_points(const Mat& d_in, Curvature k, int dim, double tol) {
  validate(d_in);
  const Mat d = 0.5 * (d_in + d_in.transpose());
  const int n = static_cast<int>(d.rows());
  const ModelSpace space(k, dim);
  Embedding out;
  out.config = ModelConfig{k, dim, {}};
  if (n == 0) {
    out.feasible = true;
    return out;
  }
  if (k.kappa > 0.0 && d.maxCoeff() >= pomega(k)) throw GeometryError("distance reaches pomega for kappa > 0");

  const double s = k.scale();
  const Chart chart = space.chart();
  Mat gram;
  if (chart == Chart::Flat) {
    gram.resize(n - 1, n - 1);
    for (Eigen::Index i = 1; i < n; ++i)
      for (Eigen::Index j = 1; j < n; ++j)
        gram(i - 1, j - 1) = 0.5 * (d(0, i) * d(0, i) + d(0, j) * d(0, j) - d(i, j) * d(i, j));
  } else if (chart == Chart::Sphere) {
    gram = (s * d).array().cos().matrix();
  } else {
    gram = -(s * d).array().cosh().matrix();
  }

  std::vector<Vec> coords(n, Vec::Zero(space.ambient_dim()));
  if (gram.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<Mat> es(gram);
    const Vec& lam = es.eigenvalues();  // ascending
    const Mat& V = es.eigenvectors();
    const int m = static_cast<int>(lam.size());
    const double eps = tol * std::max(1.0, lam.cwiseAbs().maxCoeff());
    int first_positive = 0;
    if (chart == Chart::Hyperboloid) {
      if (lam[0] >= -eps) return out;  // needs one timelike direction
      first_positive = 1;
    }
    out.min_eigenvalue = m > first_positive ? lam[first_positive] : 0.0;
    if (out.min_eigenvalue < -eps) return out;
    const int spatial = space.ambient_dim() - (chart == Chart::Hyperboloid ? 1 : 0);
    const int rank_limit = chart == Chart::Sphere ? dim + 1 : spatial;
    int significant = 0;
    for (int i = first_positive; i < m; ++i)
      if (lam[i] > eps) ++significant;
    if (significant > rank_limit) return out;

    const int take = std::min(m - first_positive, rank_limit);
    const int offset = chart == Chart::Flat ? 1 : 0;
    for (int p = 0; p + offset < n; ++p) {
      Vec& c = coords[p + offset];
      int col = chart == Chart::Hyperboloid ? 1 : 0;
      if (chart == Chart::Hyperboloid) c[0] = V(p, 0) * std::sqrt(-lam[0]);
      for (int e = 0; e < take; ++e) {
        const int idx = m - 1 - e;
        c[col + e] = V(p, idx) * std::sqrt(std::max(0.0, lam[idx]));
      }
    }
    if (chart == Chart::Hyperboloid) {
      double sum = 0;
      for (const Vec& c : coords) sum += c[0];
      if (sum < 0)
        for (Vec& c : coords) c[0] = -c[0];
    }
  }

  for (Vec& c : coords) {
    if (chart == Chart::Sphere) {
      const double nc = c.norm();
      if (nc == 0.0) return out;
      c /= nc;
    } else if (chart == Chart::Hyperboloid) {
      const double q = -minkowski(c, c);
      if (!(q > 0.0) || c[0] <= 0.0) return out;
      c /= std::sqrt(q);
    }
    out.config.points.push_back(ModelPoint{chart, c});
  }
  out.feasible = true;
  out.residual = residual_of(out.config, d);
  return out;
}

Embedding embed_simplex(const Mat& d4, Curvature k, double tol) {
  if (d4.rows() != 4 || d4.cols() != 4) throw GeometryError("embed_simplex expects a 4x4 matrix");
  return embed_points(d4, k, 3, tol);
}

}  // namespace alexcomp
