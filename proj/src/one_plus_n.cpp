#include "alexcomp/comparisons.hpp"
#include "alexcomp/sampling.hpp"
#include "alexcomp/trigonometry.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace alexcomp {

namespace {

// Upper bounds on Gram entries <u_i,u_j> for a required slack level t.
struct Thresholds {
  Mat c;
  bool feasible = true;
};

struct Problem {
  Curvature k;
  Vec r;  // distances from the base
  Mat d;  // distances among targets
};

Thresholds thresholds(const Problem& pb, double t) {
  const auto n = pb.r.size();
  Thresholds th{Mat::Ones(n, n), true};
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double target = pb.d(i, j) + t;
      const double ri = pb.r[i], rj = pb.r[j];
      double c = 1.0;
      if (ri == 0.0 || rj == 0.0) {
        if (target > std::max(ri, rj)) th.feasible = false;
      } else {
        const double lo = side_from_angle(ri, rj, 0.0, pb.k);
        const double hi = side_from_angle(ri, rj, std::numbers::pi, pb.k);
        if (target > hi) {
          th.feasible = false;
          c = -1.0;
        } else if (target > lo) {
          const auto ang = model_angle(ri, rj, target, pb.k);
          c = ang ? std::cos(*ang) : -1.0;
        }
      }
      th.c(i, j) = th.c(j, i) = c;
    }
  return th;
}

// Largest slack any configuration can reach: every pair at angle pi.
double slack_cap(const Problem& pb) {
  const auto n = pb.r.size();
  double cap = kInfinity;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double ri = pb.r[i], rj = pb.r[j];
      const double hi = (ri == 0.0 || rj == 0.0) ? std::max(ri, rj) : side_from_angle(ri, rj, std::numbers::pi, pb.k);
      cap = std::min(cap, hi - pb.d(i, j));
    }
  return cap;
}

Mat project_psd(const Mat& z) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (z + z.transpose()));
  const Vec lam = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

Mat project_box(const Mat& z, const Mat& c) {
  Mat b = z.cwiseMin(c);
  b.diagonal().setOnes();
  return b;
}

struct DrOutcome {
  Mat gram;
  Mat z;
  double gap = kInfinity;
};

// Douglas-Rachford splitting between the PSD cone and the entrywise bounds.
DrOutcome douglas_rachford(const Mat& c, Mat z, int max_iter) {
  DrOutcome out;
  std::vector<double> history;
  for (int it = 0; it < max_iter; ++it) {
    const Mat a = project_psd(z);
    const Mat b = project_box(2.0 * a - z, c);
    const double gap = (b - a).cwiseAbs().maxCoeff();
    z += b - a;
    out.gap = gap;
    if (gap < 1e-13) break;
    // stagnating positive gap: the sets do not meet
    history.push_back(gap);
    if (it >= 600 && it % 200 == 0) {
      const double old = history[history.size() - 201];
      if (gap > 1e-8 && gap > 0.995 * old) break;
    }
  }
  out.gram = project_psd(z);
  out.z = z;
  return out;
}

Mat gram_of(const std::vector<Vec>& dirs) {
  const auto n = static_cast<Eigen::Index>(dirs.size());
  Mat g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = dirs[i].dot(dirs[j]);
  return g;
}

// Unit directions from a Gram matrix (rows of V sqrt(Lambda)).
std::vector<Vec> directions_of(const Mat& g, Rng& rng) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (g + g.transpose()));
  const Vec lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Mat x = es.eigenvectors() * lam.asDiagonal();
  std::vector<Vec> dirs;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    Vec u = x.row(i).transpose();
    const double nu = u.norm();
    dirs.push_back(nu > 1e-14 ? Vec(u / nu) : random_unit(rng, static_cast<int>(x.cols())));
  }
  return dirs;
}

ModelConfig realize(const Problem& pb, const std::vector<Vec>& dirs) {
  const int n = static_cast<int>(pb.r.size());
  const ModelSpace s(pb.k, n);
  ModelConfig cfg{pb.k, n, {s.origin()}};
  for (int i = 0; i < n; ++i) cfg.points.push_back(s.from_origin_tangent(dirs[i] * pb.r[i]));
  return cfg;
}

double actual_slack(const Problem& pb, const ModelConfig& cfg) {
  const ModelSpace s = cfg.space();
  const auto n = pb.r.size();
  double slack = kInfinity;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      slack = std::min(slack, s.dist(cfg.points[i + 1], cfg.points[j + 1]) - pb.d(i, j));
  return slack;
}

// Classical scaling of the base plus targets; directions from the base.
Mat mds_start(const Problem& pb, Rng& rng) {
  const auto n = pb.r.size();
  Mat D(n + 1, n + 1);
  D.setZero();
  for (Eigen::Index i = 0; i < n; ++i) {
    D(0, i + 1) = D(i + 1, 0) = pb.r[i];
    for (Eigen::Index j = 0; j < n; ++j) D(i + 1, j + 1) = pb.d(i, j);
  }
  const Mat J = Mat::Identity(n + 1, n + 1) - Mat::Constant(n + 1, n + 1, 1.0 / double(n + 1));
  const Mat B = -0.5 * J * D.cwiseProduct(D) * J;
  Eigen::SelfAdjointEigenSolver<Mat> es(B);
  const Vec lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Mat X = es.eigenvectors() * lam.asDiagonal();
  std::vector<Vec> dirs;
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec u = (X.row(i + 1) - X.row(0)).transpose().tail(n);
    const double nu = u.norm();
    dirs.push_back(nu > 1e-12 ? Vec(u / nu) : random_unit(rng, static_cast<int>(n)));
  }
  return gram_of(dirs);
}

Mat random_start(Eigen::Index n, Rng& rng) {
  std::vector<Vec> dirs;
  for (Eigen::Index i = 0; i < n; ++i) dirs.push_back(random_unit(rng, static_cast<int>(n)));
  return gram_of(dirs);
}

}  // namespace

OnePlusNResult check_1plusN(const FiniteMetric& m, std::size_t base, Curvature k, const OnePlusNOptions& opt) {
  if (base >= m.size()) throw GeometryError("basepoint index out of range");
  OnePlusNResult res;
  res.base = base;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (i != base) res.targets.push_back(i);
  const auto n = static_cast<Eigen::Index>(res.targets.size());
  const double tol = opt.tol.value_or(default_tolerance(m));

  Problem pb{k, Vec(n), Mat(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    pb.r[i] = m(base, res.targets[i]);
    for (Eigen::Index j = 0; j < n; ++j) pb.d(i, j) = m(res.targets[i], res.targets[j]);
  }
  if (k.kappa > 0.0 && n > 0 && pb.r.maxCoeff() > pomega(k))
    throw GeometryError("distance from the basepoint exceeds pomega");

  Rng rng(opt.seed);
  if (n == 0) {
    res.verdict = Verdict::Pass;
    res.slack = kInfinity;
    res.witness = ModelConfig{k, 1, {ModelSpace(k, 1).origin()}};
    return res;
  }

  double best = -kInfinity;
  Mat best_z = Mat::Identity(n, n);
  auto consider = [&](const DrOutcome& o) {
    const ModelConfig cfg = realize(pb, directions_of(o.gram, rng));
    const double s = n >= 2 ? actual_slack(pb, cfg) : kInfinity;
    ++res.solves;
    if (s > best) {
      best = s;
      best_z = o.z;
      res.witness = cfg;
    }
    return s;
  };

  if (n == 1) {
    consider(DrOutcome{Mat::Ones(1, 1), Mat::Ones(1, 1), 0.0});
    res.slack = best;
    res.verdict = Verdict::Pass;
    return res;
  }

  const double cap = slack_cap(pb);
  std::vector<Mat> starts{mds_start(pb, rng)};
  for (int s = 0; s < opt.restarts; ++s) starts.push_back(random_start(n, rng));

  // slack level zero from every start until a witness appears
  const Thresholds th0 = thresholds(pb, 0.0);
  bool infeasible_at_zero = !th0.feasible;
  for (const Mat& z0 : starts) {
    if (!th0.feasible) {
      consider(douglas_rachford(thresholds(pb, std::min(0.0, cap)).c, z0, opt.max_iter));
      break;
    }
    const DrOutcome o = douglas_rachford(th0.c, z0, opt.max_iter);
    consider(o);
    if (best >= -tol) break;
    if (o.gap > 1e-8) {
      infeasible_at_zero = true;  // the convex problem has no solution; more starts cannot help
      break;
    }
  }

  if (best < -tol) {
    // bisection on the slack level; feasibility is monotone in t
    double lo = best, hi = infeasible_at_zero ? std::min(0.0, cap) : 0.0;
    for (int it = 0; it < 60 && hi - lo > 1e-12 * (1.0 + std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      const Thresholds th = thresholds(pb, mid);
      if (!th.feasible) {
        hi = mid;
        continue;
      }
      const DrOutcome o = douglas_rachford(th.c, best_z, opt.max_iter);
      const double s = consider(o);
      if (o.gap <= 1e-10 || s >= mid - 1e-12) {
        lo = std::max(mid, std::min(s, hi));
      } else {
        hi = mid;
      }
      if (best >= -tol) break;
    }
  }

  res.slack = best;
  res.verdict = best >= -tol ? Verdict::Pass : Verdict::Unknown;
  return res;
}

}  // namespace alexcomp
