#include "alexcomp/comparisons.hpp"

#include "alexcomp/trigonometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace alexcomp {

namespace {

struct AngleValue {
  double value = 0.0;
  bool degenerate = false;
  bool undefined = false;
};

// Model angle at p; a zero adjacent side marks the tuple degenerate.
AngleValue angle_at(double d_pq, double d_pr, double d_qr, Curvature k) {
  if (d_pq == 0.0 || d_pr == 0.0) return {0.0, true, false};
  const auto a = model_angle(d_pq, d_pr, d_qr, k);
  if (!a) return {0.0, false, true};
  return {*a, false, false};
}

Verdict verdict_for(double defect, double tol) { return defect >= -tol ? Verdict::Pass : Verdict::Fail; }

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Undefined: return "UNDEFINED";
    default: return "UNKNOWN";
  }
}

bool ComparisonReport::passed() const {
  return std::all_of(records.begin(), records.end(), [](const TupleRecord& r) { return counts_as_pass(r.verdict); });
}

std::size_t ComparisonReport::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [v](const TupleRecord& r) { return r.verdict == v; }));
}

const TupleRecord* ComparisonReport::worst() const {
  const TupleRecord* w = nullptr;
  for (const TupleRecord& r : records)
    if (!std::isnan(r.defect) && (!w || r.defect < w->defect)) w = &r;
  return w;
}

double default_tolerance(const FiniteMetric& m) { return 1e-9 * (1.0 + m.diameter()); }

std::vector<std::size_t> label_order(const FiniteMetric& m) {
  std::vector<std::size_t> idx(m.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return m.label(a) < m.label(b); });
  return idx;
}

ComparisonReport check_1plus3(const FiniteMetric& m, Curvature k, std::optional<double> tol) {
  ComparisonReport rep{"1+3", k, tol.value_or(default_tolerance(m)), {}};
  const auto ord = label_order(m);
  const std::size_t n = ord.size();
  for (std::size_t ci = 0; ci < n; ++ci) {
    const std::size_t p = ord[ci];
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i)
      if (i != ci) rest.push_back(ord[i]);
    for (std::size_t a = 0; a < rest.size(); ++a)
      for (std::size_t b = a + 1; b < rest.size(); ++b)
        for (std::size_t c = b + 1; c < rest.size(); ++c) {
          const std::size_t x1 = rest[a], x2 = rest[b], x3 = rest[c];
          const AngleValue a12 = angle_at(m(p, x1), m(p, x2), m(x1, x2), k);
          const AngleValue a23 = angle_at(m(p, x2), m(p, x3), m(x2, x3), k);
          const AngleValue a31 = angle_at(m(p, x3), m(p, x1), m(x3, x1), k);
          TupleRecord r;
          r.indices = {p, x1, x2, x3};
          if (a12.undefined || a23.undefined || a31.undefined) {
            r.verdict = Verdict::Undefined;
            r.defect = std::numeric_limits<double>::quiet_NaN();
          } else {
            r.defect = 2.0 * std::numbers::pi - (a12.value + a23.value + a31.value);
            r.degenerate = a12.degenerate || a23.degenerate || a31.degenerate;
            if (r.degenerate) {
              r.defect = std::max(0.0, r.defect);
              r.verdict = Verdict::Pass;
            } else {
              r.verdict = verdict_for(r.defect, rep.tol);
            }
          }
          rep.records.push_back(std::move(r));
        }
  }
  return rep;
}

ComparisonReport check_2plus2(const FiniteMetric& m, Curvature k, std::optional<double> tol) {
  ComparisonReport rep{"2+2", k, tol.value_or(default_tolerance(m)), {}};
  const auto ord = label_order(m);
  const std::size_t n = ord.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          const std::array<std::size_t, 4> q{ord[a], ord[b], ord[c], ord[d]};
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
              std::array<std::size_t, 2> xs{};
              int t = 0;
              for (int l = 0; l < 4; ++l)
                if (l != i && l != j) xs[t++] = q[l];
              const std::size_t p1 = q[i], p2 = q[j], x1 = xs[0], x2 = xs[1];
              const AngleValue A = angle_at(m(p1, x1), m(p1, x2), m(x1, x2), k);
              const AngleValue B = angle_at(m(p1, p2), m(p1, x1), m(p2, x1), k);
              const AngleValue C = angle_at(m(p1, p2), m(p1, x2), m(p2, x2), k);
              const AngleValue D = angle_at(m(p2, x1), m(p2, x2), m(x1, x2), k);
              const AngleValue E = angle_at(m(p2, p1), m(p2, x1), m(p1, x1), k);
              const AngleValue F = angle_at(m(p2, p1), m(p2, x2), m(p1, x2), k);
              TupleRecord r;
              r.indices = {p1, p2, x1, x2};
              const std::array<AngleValue, 6> all{A, B, C, D, E, F};
              if (std::any_of(all.begin(), all.end(), [](const AngleValue& v) { return v.undefined; })) {
                r.verdict = Verdict::Undefined;
                r.defect = std::numeric_limits<double>::quiet_NaN();
              } else {
                r.defect = std::max(B.value + C.value - A.value, E.value + F.value - D.value);
                r.degenerate = std::any_of(all.begin(), all.end(), [](const AngleValue& v) { return v.degenerate; });
                if (r.degenerate) {
                  r.defect = std::max(0.0, r.defect);
                  r.verdict = Verdict::Pass;
                } else {
                  r.verdict = verdict_for(r.defect, rep.tol);
                }
              }
              rep.records.push_back(std::move(r));
            }
        }
  return rep;
}

double pos_defect(double d_px, double d_py, double d_xy, double d_xz, double d_pz, Curvature k) {
  const auto tri = model_triangle(d_px, d_xy, d_py, k);  // vertices p, x, y
  if (!tri) throw GeometryError("model triangle of p, x, y is not defined");
  double model_pz;
  if (d_xz == 0.0) {
    model_pz = d_px;
  } else if (d_px == 0.0) {
    model_pz = d_xz;
  } else {
    // angle at x between p and y; with |xy| = 0 the point z coincides with x
    const double ax = tri->angle_q.value_or(0.0);
    model_pz = side_from_angle(d_px, d_xz, ax, k);
  }
  return model_pz - d_pz;
}

double pos_defect(const FiniteMetric& m, std::size_t p, std::size_t x, std::size_t y, std::size_t z, Curvature k,
                  std::optional<double> tol) {
  const double t = tol.value_or(default_tolerance(m));
  if (std::abs(m(x, z) + m(z, y) - m(x, y)) > t) throw GeometryError("z does not lie on a geodesic from x to y");
  return pos_defect(m(p, x), m(p, y), m(x, y), m(x, z), m(p, z), k);
}

double pos_defect(const ModelSpace& s, const ModelPoint& p, const ModelPoint& x, const ModelPoint& y,
                  const ModelPoint& z) {
  const double dxy = s.dist(x, y), dxz = s.dist(x, z), dzy = s.dist(z, y);
  if (std::abs(dxz + dzy - dxy) > 1e-9 * (1.0 + dxy)) throw GeometryError("z does not lie on a geodesic from x to y");
  return pos_defect(s.dist(p, x), s.dist(p, y), dxy, dxz, s.dist(p, z), s.curvature());
}

}  // namespace alexcomp
