#include "alexcomp/comparisons.hpp"
#include "alexcomp/embedding.hpp"
#include "alexcomp/sampling.hpp"
#include "alexcomp/trigonometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace alexcomp {

namespace {

double golden_section(const std::function<double(double)>& f, double lo, double hi, double& x_best) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 100 && b - a > 1e-13; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  double best = fc;
  x_best = c;
  for (double x : {a, b, d}) {
    const double fx = f(x);
    if (fx < best) {
      best = fx;
      x_best = x;
    }
  }
  return best;
}

// Extend orthonormal tangent vectors at base to a full orthonormal basis.
std::vector<Vec> complete_frame(const ModelSpace& s, const ModelPoint& base, std::vector<Vec> frame) {
  const Mat tb = s.tangent_basis(base);
  for (Eigen::Index c = 0; c < tb.cols() && static_cast<int>(frame.size()) < s.dim(); ++c) {
    Vec v = tb.col(c);
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& f : frame) v -= s.inner(f, v) * f;
    const double nv = s.norm(v);
    if (nv > 1e-6) frame.push_back(v / nv);
  }
  return frame;
}

double frame_orientation(const ModelSpace& s, const ModelPoint& base, const std::vector<Vec>& frame) {
  const int n = s.ambient_dim();
  Mat m(n, n);
  int col = 0;
  if (s.chart() != Chart::Flat) m.col(col++) = base.coords;
  for (const Vec& f : frame) m.col(col++) = f;
  return m.determinant();
}

// Unit tangent at base pointing to target, or the first basis vector if they coincide.
Vec unit_towards(const ModelSpace& s, const ModelPoint& base, const ModelPoint& target) {
  const Vec v = s.log(base, target);
  const double nv = s.norm(v);
  if (nv > 1e-12) return v / nv;
  return s.tangent_basis(base).col(0);
}

// Component of v orthogonal to e, normalized; falls back to any unit vector orthogonal to e.
Vec orthogonal_unit(const ModelSpace& s, const ModelPoint& base, const Vec& e, const Vec& v, double sign) {
  Vec w = v - s.inner(e, v) * e;
  const double nw = s.norm(w);
  if (nw > 1e-12) return sign * w / nw;
  return complete_frame(s, base, {e})[1];
}

/**
 * Place a rigid piece so that its points A', B' land on the placed A, B.
 * Of the circle of such placements, use the one putting `probe` farthest from `ref`.
 */
std::vector<ModelPoint> glue(const ModelSpace& s, const ModelPoint& A, const ModelPoint& B, const ModelPoint& ref,
                             const std::vector<ModelPoint>& piece, std::size_t ia, std::size_t ib,
                             const ModelPoint& probe) {
  const ModelPoint& Ap = piece[ia];
  const Vec e1p = unit_towards(s, Ap, piece[ib]);
  const Vec e1 = unit_towards(s, A, B);
  const Vec ap = orthogonal_unit(s, Ap, e1p, s.log(Ap, probe), 1.0);
  const Vec a = orthogonal_unit(s, A, e1, s.log(A, ref), -1.0);
  const std::vector<Vec> src = complete_frame(s, Ap, {e1p, ap});
  std::vector<Vec> dst = complete_frame(s, A, {e1, a});
  if ((frame_orientation(s, Ap, src) > 0) != (frame_orientation(s, A, dst) > 0)) dst.back() = -dst.back();

  std::vector<ModelPoint> out;
  for (const ModelPoint& P : piece) {
    const Vec l = s.log(Ap, P);
    Vec v = Vec::Zero(s.ambient_dim());
    for (std::size_t c = 0; c < src.size(); ++c) v += s.inner(src[c], l) * dst[c];
    out.push_back(s.exp(A, v));
  }
  return out;
}

bool perimeter_ok(double a, double b, double c, Curvature k) {
  return k.kappa <= 0.0 || a + b + c < 2.0 * pomega(k);
}

}  // namespace

ChainResult check_2Nplus2(const FiniteMetric& m, const ChainSpec& spec, Curvature k, const ChainOptions& opt) {
  const std::size_t n = spec.pairs.size();
  if (n == 0) throw GeometryError("chain needs at least one pair");
  auto in_range = [&](std::size_t i) { return i < m.size(); };
  if (!in_range(spec.x) || !in_range(spec.y)) throw GeometryError("chain endpoint out of range");
  for (const auto& [p, q] : spec.pairs)
    if (!in_range(p) || !in_range(q)) throw GeometryError("chain pair index out of range");
  const double tol = opt.tol.value_or(default_tolerance(m));

  ChainResult res;
  const auto [p1, q1] = spec.pairs.front();
  const auto [pn, qn] = spec.pairs.back();

  // definedness of every model triangle involved
  auto triple_ok = [&](std::size_t a, std::size_t b, std::size_t c) {
    return perimeter_ok(m(a, b), m(b, c), m(c, a), k);
  };
  bool defined = triple_ok(spec.x, p1, q1) && triple_ok(spec.y, pn, qn);
  for (std::size_t i = 0; i + 1 < n && defined; ++i) {
    const auto [a, b] = spec.pairs[i];
    const auto [c, d] = spec.pairs[i + 1];
    defined = triple_ok(a, b, c) && triple_ok(a, b, d) && triple_ok(a, c, d) && triple_ok(b, c, d);
  }
  if (!defined) {
    res.status = ChainStatus::Undefined;
    res.verdict = Verdict::Undefined;
    res.defect = std::numeric_limits<double>::quiet_NaN();
    res.reason = "a model triangle has perimeter >= 2*pomega";
    return res;
  }

  const ModelSpace s(k, 3);
  std::vector<ModelPoint> P(n), Q(n);
  ModelPoint X, Y;

  // x~ with the first pair
  {
    std::optional<ModelTriangle> tri;
    try {
      tri = model_triangle(m(p1, q1), m(q1, spec.x), m(spec.x, p1), k);
    } catch (const GeometryError&) {
      res.status = ChainStatus::NotRealizable;
      res.reason = "triangle x p1 q1 violates the triangle inequality";
      return res;
    }
    const ModelConfig c = realize_triangle(*tri);
    P[0] = s.lift(c.points[0]);
    Q[0] = s.lift(c.points[1]);
    X = s.lift(c.points[2]);
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto [a, b] = spec.pairs[i];
    const auto [c, d] = spec.pairs[i + 1];
    const Embedding e = embed_simplex(m.block({a, b, c, d}), k);
    if (!e.feasible) {
      res.status = ChainStatus::NotRealizable;
      res.reason = "simplex of pairs " + std::to_string(i + 1) + " and " + std::to_string(i + 2) + " is not realizable";
      return res;
    }
    const auto& pc = e.config.points;
    const ModelPoint probe = s.midpoint(pc[2], pc[3]);
    const ModelPoint ref = i == 0 ? X : s.midpoint(P[i - 1], Q[i - 1]);
    const auto placed = glue(s, P[i], Q[i], ref, pc, 0, 1, probe);
    P[i + 1] = placed[2];
    Q[i + 1] = placed[3];
  }

  // y~ with the last pair
  {
    std::optional<ModelTriangle> tri;
    try {
      tri = model_triangle(m(pn, qn), m(qn, spec.y), m(spec.y, pn), k);
    } catch (const GeometryError&) {
      res.status = ChainStatus::NotRealizable;
      res.reason = "triangle y pn qn violates the triangle inequality";
      return res;
    }
    const ModelConfig c = realize_triangle(*tri);
    const std::vector<ModelPoint> piece{s.lift(c.points[0]), s.lift(c.points[1]), s.lift(c.points[2])};
    const ModelPoint ref = n == 1 ? X : s.midpoint(P[n - 2], Q[n - 2]);
    Y = glue(s, P[n - 1], Q[n - 1], ref, piece, 0, 1, piece[2])[2];
  }

  std::vector<double> len(n);
  for (std::size_t i = 0; i < n; ++i) len[i] = s.dist(P[i], Q[i]);
  auto zpoint = [&](std::size_t i, double t) { return s.geodesic(P[i], Q[i], std::clamp(t, 0.0, 1.0) * len[i]); };
  auto chain = [&](const std::vector<double>& t) {
    ModelPoint prev = X;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const ModelPoint z = zpoint(i, t[i]);
      total += s.dist(prev, z);
      prev = z;
    }
    return total + s.dist(prev, Y);
  };

  // line search along direction dir within the unit cube
  auto line_min = [&](std::vector<double>& t, const std::vector<double>& dir, double current) {
    double lo = -kInfinity, hi = kInfinity;
    for (std::size_t i = 0; i < n; ++i) {
      if (dir[i] > 0) {
        lo = std::max(lo, -t[i] / dir[i]);
        hi = std::min(hi, (1.0 - t[i]) / dir[i]);
      } else if (dir[i] < 0) {
        lo = std::max(lo, (1.0 - t[i]) / dir[i]);
        hi = std::min(hi, -t[i] / dir[i]);
      }
    }
    if (!(hi > lo)) return current;
    auto at = [&](double a) {
      std::vector<double> u = t;
      for (std::size_t i = 0; i < n; ++i) u[i] = std::clamp(t[i] + a * dir[i], 0.0, 1.0);
      return u;
    };
    double a_best = 0.0;
    const double v = golden_section([&](double a) { return chain(at(a)); }, lo, hi, a_best);
    if (v < current) {
      t = at(a_best);
      return v;
    }
    return current;
  };

  Rng rng(opt.seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<std::vector<double>> starts{std::vector<double>(n, 0.5)};
  if (k.kappa > 0.0)
    for (int r = 0; r < opt.random_starts; ++r) {
      std::vector<double> t(n);
      for (double& ti : t) ti = U(rng);
      starts.push_back(t);
    }

  double best = kInfinity;
  std::vector<double> best_t;
  for (std::vector<double> t : starts) {
    double v = chain(t);
    for (int sweep = 0; sweep < 200; ++sweep) {
      const double before = v;
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> dir(n, 0.0);
        dir[i] = 1.0;
        v = line_min(t, dir, v);
      }
      // paired moves at matched speed escape kinks where consecutive z coincide
      for (std::size_t i = 0; i + 1 < n; ++i)
        for (double sg : {1.0, -1.0}) {
          std::vector<double> dir(n, 0.0);
          dir[i] = 1.0 / std::max(len[i], 1e-12);
          dir[i + 1] = sg / std::max(len[i + 1], 1e-12);
          v = line_min(t, dir, v);
        }
      if (n > 2)
        for (int r = 0; r < 2; ++r) {
          const Vec g = random_unit(rng, static_cast<int>(n));
          v = line_min(t, std::vector<double>(g.data(), g.data() + n), v);
        }
      if (before - v <= 1e-15 * (1.0 + v)) break;
    }
    if (v < best) {
      best = v;
      best_t = t;
    }
  }

  res.status = ChainStatus::Evaluated;
  res.chain_length = best;
  res.defect = best - m(spec.x, spec.y);
  res.verdict = res.defect >= -tol ? Verdict::Pass : Verdict::Fail;
  res.t = best_t;
  ModelConfig cfg{k, 3, {X, Y}};
  for (std::size_t i = 0; i < n; ++i) {
    cfg.points.push_back(P[i]);
    cfg.points.push_back(Q[i]);
    res.z.push_back(zpoint(i, best_t[i]));
  }
  res.witness = cfg;
  return res;
}

}  // namespace alexcomp
