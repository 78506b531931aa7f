#include "alexcomp/minimax.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace alexcomp {

namespace {

// d * cot_kappa(d), the transverse Hessian factor of d^2/2; tends to 1 at d = 0.
double dcot(Curvature k, double d) {
  const double x = k.scale() * d;
  if (x < 1e-8) return 1.0;
  switch (k.sign()) {
    case 0: return 1.0;
    case 1: return x / std::tan(x);
    default: return x / std::tanh(x);
  }
}

// Hessian factor of Psi: cos(sd), 1 or cosh(sd).
double psi_curv(Curvature k, double d) {
  const double x = k.scale() * d;
  switch (k.sign()) {
    case 0: return 1.0;
    case 1: return std::cos(x);
    default: return std::cosh(x);
  }
}

// Derivative of Psi in d.
double psi_prime(Curvature k, double d) {
  const double s = k.scale();
  switch (k.sign()) {
    case 0: return d;
    case 1: return std::sin(s * d) / s;
    default: return std::sinh(s * d) / s;
  }
}

// Psi(a) - Psi(b) without cancellation.
double psi_diff(Curvature k, double a, double b) {
  const double s = k.scale();
  switch (k.sign()) {
    case 0: return 0.5 * (a - b) * (a + b);
    case 1: return 2.0 * std::sin(0.5 * s * (a + b)) * std::sin(0.5 * s * (a - b)) / (s * s);
    default: return 2.0 * std::sinh(0.5 * s * (a + b)) * std::sinh(0.5 * s * (a - b)) / (s * s);
  }
}

struct State {
  ModelPoint q;
  double t = 0.0;
};

}  // namespace

double potential_value(Potential pot, Curvature k, double d) {
  const double s = k.scale();
  switch (pot) {
    case Potential::HalfSquared: return 0.5 * d * d;
    case Potential::Cosh: return std::cosh(s * d) / (s * s);
    case Potential::Psi:
    default: {
      if (k.sign() == 0) return 0.5 * d * d;
      const double h = (k.sign() > 0 ? std::sin(0.5 * s * d) : std::sinh(0.5 * s * d)) / s;
      return 2.0 * h * h;
    }
  }
}

PotentialJet potential_jet(const ModelSpace& s, Potential pot, const ModelPoint& q, const ModelPoint& y,
                           const Mat& basis) {
  const Curvature k = s.curvature();
  const double sc = k.scale();
  const auto m = basis.cols();
  PotentialJet j;
  j.dist = s.dist(q, y);
  j.value = potential_value(pot, k, j.dist);
  Vec g;  // ambient gradient
  if (pot == Potential::HalfSquared) {
    g = j.dist > 0.0 ? Vec(-s.log(q, y)) : Vec::Zero(q.coords.size());
  } else if (k.sign() == 0) {
    g = q.coords - y.coords;
  } else if (k.sign() > 0) {
    g = -(y.coords - q.coords.dot(y.coords) * q.coords) / sc;
  } else {
    g = -(y.coords + minkowski(q.coords, y.coords) * q.coords) / sc;
  }
  j.grad.resize(m);
  for (Eigen::Index c = 0; c < m; ++c) j.grad[c] = s.inner(basis.col(c), g);

  if (pot == Potential::HalfSquared) {
    const double f = dcot(k, j.dist);
    j.hess = f * Mat::Identity(m, m);
    const double gn = j.grad.norm();
    if (gn > 0.0) {
      const Vec u = j.grad / gn;
      j.hess += (1.0 - f) * u * u.transpose();
    }
  } else {
    j.hess = psi_curv(k, j.dist) * Mat::Identity(m, m);
  }
  return j;
}

double max_violation(const ModelSpace& s, const std::vector<ModelPoint>& y, const std::vector<double>& r,
                     const ModelPoint& q) {
  double g = -kInfinity;
  for (std::size_t i = 0; i < y.size(); ++i) g = std::max(g, s.dist(q, y[i]) - r[i]);
  return g;
}

BarrierResult barrier_solve(const ModelSpace& s, const BarrierProblem& pb, const ModelPoint& start, double gap) {
  const Curvature k = s.curvature();
  const bool epigraph = !pb.objective_anchor.has_value();
  const double cap = k.sign() > 0 ? pomega(k) : kInfinity;
  const int m = s.dim();
  const int nv = m + (epigraph ? 1 : 0);
  using C = BarrierConstraint;

  // slack w_i > 0 of each constraint, or -inf if violated
  auto slack = [&](const C& c, double d, double t) {
    switch (c.rhs) {
      case C::Rhs::Shift: {
        const double a = std::min(c.r + t, cap);
        if (!(d < a)) return -kInfinity;
        return psi_diff(k, a, d);
      }
      case C::Rhs::Additive: return c.r + t - potential_value(c.pot, k, d);
      case C::Rhs::Fixed:
      default: return c.r - potential_value(c.pot, k, d);
    }
  };

  double scale = 1.0;
  for (const C& c : pb.constraints) scale = std::max(scale, std::abs(c.r));

  State st{start, 0.0};
  if (epigraph) {
    double need = -kInfinity;
    for (const C& c : pb.constraints) {
      const double d = s.dist(start, c.anchor);
      double t0;
      if (c.rhs == C::Rhs::Shift) t0 = d - c.r;
      else if (c.rhs == C::Rhs::Additive) t0 = potential_value(c.pot, k, d) - c.r;
      else continue;
      need = std::max(need, t0);
    }
    st.t = need + 0.1 * scale;
  }

  auto value = [&](const State& x, double mu) {
    double f = 0.0;
    if (epigraph) {
      f = x.t / mu;
    } else {
      f = potential_value(pb.objective_pot, k, s.dist(x.q, *pb.objective_anchor)) / mu;
    }
    for (const C& c : pb.constraints) {
      const double w = slack(c, s.dist(x.q, c.anchor), x.t);
      if (!(w > 0.0)) return kInfinity;
      f -= std::log(w);
    }
    return f;
  };

  BarrierResult res;
  res.point = start;
  double mu = 0.1 * scale;
  if (epigraph && k.sign() < 0) {
    // log Psi(r + t) grows like s*t; keep t/mu dominant or the barrier is unbounded below
    const auto shifts = std::count_if(pb.constraints.begin(), pb.constraints.end(),
                                      [](const C& c) { return c.rhs == C::Rhs::Shift; });
    if (shifts > 0) mu = std::min(mu, 0.5 / (static_cast<double>(shifts) * k.scale()));
  }
  if (!std::isfinite(value(st, mu))) return res;  // start not strictly feasible

  const double mu_end = gap / std::max<std::size_t>(1, pb.constraints.size());
  const double max_move = k.sign() > 0 ? 0.25 * pomega(k) : kInfinity;
  bool finished = false;
  while (!finished) {
    for (int it = 0; it < 100; ++it) {
      const Mat basis = s.tangent_basis(st.q);
      Vec grad = Vec::Zero(nv);
      Mat hess = Mat::Zero(nv, nv);
      if (epigraph) {
        grad[m] = 1.0 / mu;
      } else {
        const PotentialJet j = potential_jet(s, pb.objective_pot, st.q, *pb.objective_anchor, basis);
        grad.head(m) = j.grad / mu;
        hess.topLeftCorner(m, m) = j.hess / mu;
      }
      for (const C& c : pb.constraints) {
        const PotentialJet j = potential_jet(s, c.pot, st.q, c.anchor, basis);
        const double w = slack(c, j.dist, st.t);
        Vec dw = Vec::Zero(nv);
        dw.head(m) = -j.grad;
        Mat d2w = Mat::Zero(nv, nv);
        d2w.topLeftCorner(m, m) = -j.hess;
        if (epigraph && c.rhs != C::Rhs::Fixed) {
          if (c.rhs == C::Rhs::Shift) {
            const double a = c.r + st.t;
            if (a < cap) {
              dw[m] = psi_prime(k, a);
              d2w(m, m) = psi_curv(k, a);
            }
          } else {
            dw[m] = 1.0;
          }
        }
        grad -= dw / w;
        hess += dw * dw.transpose() / (w * w) - d2w / w;
      }

      // Newton direction with the Hessian made positive definite
      Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (hess + hess.transpose()));
      const double top = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
      const Vec lam = es.eigenvalues().cwiseAbs().cwiseMax(1e-14 * top);
      Vec dir = -es.eigenvectors() * (es.eigenvectors().transpose() * grad).cwiseQuotient(lam);
      double slope = grad.dot(dir);
      if (!(slope < 0.0)) {
        dir = -grad;
        slope = -grad.squaredNorm();
      }
      if (-slope < 1e-20) break;

      const double f0 = value(st, mu);
      double alpha = 1.0;
      const double vn = dir.head(m).norm();
      if (vn * alpha > max_move) alpha = max_move / vn;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        State trial{s.exp(st.q, basis * dir.head(m) * alpha), epigraph ? st.t + alpha * dir[m] : 0.0};
        const double f1 = value(trial, mu);
        if (f1 <= f0 + 1e-4 * alpha * slope) {
          st = trial;
          moved = true;
          break;
        }
      }
      ++res.newton_steps;
      if (!moved || -slope < 1e-18) break;
    }
    if (mu <= mu_end) finished = true;
    mu = std::max(mu * 0.1, mu_end);
  }
  res.point = st.q;
  res.t = st.t;
  res.ok = true;
  return res;
}

}  // namespace alexcomp
