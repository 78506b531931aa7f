#pragma once

#include "alexcomp/model_space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace alexcomp {

struct TriangleViolation {
  std::size_t i, j, k;  // d(i,k) > d(i,j) + d(j,k)
  double excess;
};

/// Labeled symmetric distance matrix with zero diagonal.
class FiniteMetric {
 public:
  FiniteMetric() = default;
  /// Rejects NaN, negative entries, nonzero diagonal and asymmetry beyond 1e-12 (relative).
  FiniteMetric(std::vector<std::string> labels, const Mat& d);

  static FiniteMetric from_points(const ModelSpace& space, const std::vector<ModelPoint>& pts,
                                  std::vector<std::string> labels = {});

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::optional<std::size_t> index_of(const std::string& label) const;
  double operator()(std::size_t i, std::size_t j) const { return d_(i, j); }
  const Mat& matrix() const { return d_; }
  double diameter() const;

  FiniteMetric subset(const std::vector<std::size_t>& idx) const;
  /// Distance matrix of a subset, in the given order.
  Mat block(const std::vector<std::size_t>& idx) const;

  std::vector<TriangleViolation> audit_triangle_inequality(double tol = 1e-12) const;

 private:
  std::vector<std::string> labels_;
  Mat d_;
};

}  // namespace alexcomp
