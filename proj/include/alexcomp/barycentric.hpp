#pragma once

#include "alexcomp/model_space.hpp"

#include <vector>

namespace alexcomp {

/// Point of the standard simplex; renormalized on construction.
class WeightVector {
 public:
  explicit WeightVector(const Vec& x);
  static WeightVector uniform(int n);
  static WeightVector vertex(int n, int i);

  const Vec& x() const { return x_; }
  int size() const { return static_cast<int>(x_.size()); }
  double operator[](int i) const { return x_[i]; }

 private:
  Vec x_;
};

enum class FunctionForm { HalfSquaredDist, CoshDist };

/// f^i(q) = |a^i q|^2 / 2, or cosh(s |a^i q|) / s^2 on the hyperbolic chart.
struct FunctionArray {
  Curvature curvature;
  int dim = 0;
  std::vector<ModelPoint> anchors;
  FunctionForm form = FunctionForm::HalfSquaredDist;
  double lambda = 1.0;  // declared convexity parameter

  FunctionArray(Curvature k, int dim, std::vector<ModelPoint> anchors,
                FunctionForm form = FunctionForm::HalfSquaredDist, double lambda = 1.0);

  ModelSpace space() const { return ModelSpace(curvature, dim); }
  std::size_t size() const { return anchors.size(); }
  double value(std::size_t i, const ModelPoint& q) const;
  Vec values(const ModelPoint& q) const;
};

struct ArgminOptions {
  double grad_tol = 1e-10;
  int max_iter = 10000;
};

struct ArgminResult {
  ModelPoint point;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// argmin of sum_i w_i f^i by geodesic gradient descent with step 1/(lambda + L).
ArgminResult argmin_strongly_convex(const FunctionArray& fa, const Vec& weights, const ModelPoint& start,
                                    const ArgminOptions& opt = {});

/// The barycentric simplex map sigma_f(x) = argmin sum x_i f^i.
ArgminResult bary_simplex(const FunctionArray& fa, const WeightVector& x, const ArgminOptions& opt = {});

/// v dominates w componentwise (v_i >= w_i for all i).
bool supset_dominates(const Vec& v, const Vec& w);

/// nu(v) = argmin_q max_i (f^i(q) - v_i).
ArgminResult h_v_argmin(const FunctionArray& fa, const Vec& v);

}  // namespace alexcomp
