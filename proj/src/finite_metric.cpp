#include "alexcomp/finite_metric.hpp"

#include <cmath>
#include <set>

namespace alexcomp {

FiniteMetric::FiniteMetric(std::vector<std::string> labels, const Mat& d) : labels_(std::move(labels)) {
  const auto n = static_cast<Eigen::Index>(labels_.size());
  if (d.rows() != n || d.cols() != n)
    throw GeometryError("distance matrix is " + std::to_string(d.rows()) + "x" + std::to_string(d.cols()) +
                        " but there are " + std::to_string(n) + " labels");
  if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size())
    throw GeometryError("duplicate labels");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::isnan(d(i, j))) throw GeometryError("NaN distance");
      if (!std::isfinite(d(i, j))) throw GeometryError("infinite distance");
      if (d(i, j) < 0.0) throw GeometryError("negative distance");
    }
  const double scale = n > 0 ? 1.0 + d.maxCoeff() : 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(d(i, i)) > 1e-12 * scale) throw GeometryError("nonzero diagonal entry");
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(d(i, j) - d(j, i)) > 1e-12 * scale)
        throw GeometryError("asymmetric entry between " + labels_[i] + " and " + labels_[j]);
  }
  d_ = 0.5 * (d + d.transpose());
  d_.diagonal().setZero();
}

FiniteMetric FiniteMetric::from_points(const ModelSpace& space, const std::vector<ModelPoint>& pts,
                                       std::vector<std::string> labels) {
  const auto n = pts.size();
  if (labels.empty())
    for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  Mat d = Mat::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d(i, j) = d(j, i) = space.dist(pts[i], pts[j]);
  return FiniteMetric(std::move(labels), d);
}

std::optional<std::size_t> FiniteMetric::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

double FiniteMetric::diameter() const { return size() == 0 ? 0.0 : d_.maxCoeff(); }

FiniteMetric FiniteMetric::subset(const std::vector<std::size_t>& idx) const {
  std::vector<std::string> l;
  for (auto i : idx) l.push_back(labels_.at(i));
  return FiniteMetric(std::move(l), block(idx));
}

Mat FiniteMetric::block(const std::vector<std::size_t>& idx) const {
  const auto n = idx.size();
  Mat b(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) b(a, c) = d_(idx[a], idx[c]);
  return b;
}

std::vector<TriangleViolation> FiniteMetric::audit_triangle_inequality(double tol) const {
  std::vector<TriangleViolation> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double excess = d_(i, k) - d_(i, j) - d_(j, k);
        if (excess > tol) out.push_back({i, j, k, excess});
      }
  return out;
}

}  // namespace alexcomp
