#include "doctest.h"
#include "support/oracles.hpp"

#include "alexcomp/comparisons.hpp"
#include "alexcomp/extension.hpp"
#include "alexcomp/fixtures.hpp"
#include "alexcomp/minimax.hpp"
#include "alexcomp/sampling.hpp"
#include "alexcomp/trigonometry.hpp"

#include <cmath>
#include <numbers>

using namespace alexcomp;
using std::numbers::pi;

namespace {

ModelPoint flat2(double x, double y) {
  Vec c(2);
  c << x, y;
  return ModelSpace(Curvature{0.0}, 2).point(c);
}

ModelPoint circle_point(double a) {
  Vec c(2);
  c << std::cos(a), std::sin(a);
  return ModelSpace(Curvature{1.0}, 1).point(c);
}

ModelPoint sphere_point(double theta, double phi) {
  Vec c(3);
  c << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta);
  return ModelSpace(Curvature{1.0}, 2).point(c);
}

// brute force min over the unit circle of max_i (angle - r_i)
double circle_minimax(const std::vector<ModelPoint>& y, const std::vector<double>& r) {
  double best = 1e300;
  const int N = 200000;
  for (int t = 0; t < N; ++t) {
    const double a = 2 * pi * t / N;
    Eigen::VectorXd q(2);
    q << std::cos(a), std::sin(a);
    double g = -1e300;
    for (std::size_t i = 0; i < y.size(); ++i) g = std::max(g, oracle::sphere_dist(q, y[i].coords) - r[i]);
    best = std::min(best, g);
  }
  return best;
}

// Nearest-point projection onto the totally geodesic plane spanned by the first two directions.
ModelPoint project_to_plane(const ModelSpace& src, const ModelPoint& p) {
  const ModelSpace dst(src.curvature(), 2);
  if (src.curvature().sign() == 0) return dst.point(p.coords.head(2));
  Eigen::VectorXd c = p.coords.head(3);
  return dst.point(c / std::sqrt(-oracle::lorentz(c, c)));
}

}  // namespace

TEST_CASE("chebyshev: flat two-point examples") {
  ExtensionInstance inst{Curvature{0.0}, 2, {flat2(0, 0), flat2(2, 0)}, {1.0, 1.0}, std::nullopt};
  auto r = chebyshev_extend(inst);
  CHECK(r.feasible);
  CHECK(r.certified);
  CHECK(std::abs(r.defect) < 1e-9);
  CHECK((r.point.coords - flat2(1, 0).coords).norm() < 1e-6);

  inst.radii = {0.5, 0.5};
  r = chebyshev_extend(inst);
  CHECK_FALSE(r.feasible);
  CHECK(r.defect == doctest::Approx(0.5).epsilon(1e-10));
  CHECK((r.point.coords - flat2(1, 0).coords).norm() < 1e-6);
  CHECK(r.active.size() == 2);
}

TEST_CASE("chebyshev: four points on a great circle") {
  std::vector<ModelPoint> y;
  for (int i = 0; i < 4; ++i) y.push_back(circle_point(pi / 2 * i));
  const std::vector<double> r(4, pi / 2);
  const double brute = circle_minimax(y, r);
  CHECK(brute == doctest::Approx(pi / 4).epsilon(1e-6));

  ExtensionInstance inst{Curvature{1.0}, 1, y, r, std::nullopt};
  const auto res = chebyshev_extend(inst);
  CHECK(res.defect == doctest::Approx(pi / 4).epsilon(1e-9));
  CHECK_FALSE(res.certified);

  // the same configuration on the equator of S^2: the poles do better
  std::vector<ModelPoint> ys;
  for (int i = 0; i < 4; ++i) ys.push_back(sphere_point(pi / 2, pi / 2 * i));
  ExtensionInstance s2{Curvature{1.0}, 2, ys, r, std::nullopt};
  CHECK(chebyshev_extend(s2).defect <= 1e-9);
}

TEST_CASE("chebyshev: input checks") {
  CHECK_THROWS_AS(chebyshev_extend(ExtensionInstance{Curvature{0.0}, 2, {}, {}, std::nullopt}), GeometryError);
  CHECK_THROWS_AS(chebyshev_extend(ExtensionInstance{Curvature{0.0}, 2, {flat2(0, 0)}, {-1.0}, std::nullopt}),
                  GeometryError);
  // a center that does not hold the targets
  ExtensionInstance bad{Curvature{1.0}, 2, {sphere_point(pi / 2 + 0.3, 0)}, {0.1}, sphere_point(0, 0)};
  CHECK_THROWS_AS(chebyshev_extend(bad), GeometryError);
}

TEST_CASE("chebyshev: objective is midpoint convex for kappa <= 0") {
  Rng rng(11);
  for (double kappa : {0.0, -1.0, -0.3}) {
    const ModelSpace s(Curvature{kappa}, 3);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<ModelPoint> y;
      std::vector<double> r;
      for (int i = 0; i < 5; ++i) {
        y.push_back(random_point(s, rng, 3.0));
        r.push_back(std::uniform_real_distribution<double>(0.0, 2.0)(rng));
      }
      const ModelPoint a = random_point(s, rng, 4.0), b = random_point(s, rng, 4.0);
      const double ga = max_violation(s, y, r, a), gb = max_violation(s, y, r, b);
      const double gm = max_violation(s, y, r, s.midpoint(a, b));
      CHECK(gm <= 0.5 * ga + 0.5 * gb + 1e-9);
      ++checked;
    }
    CHECK(checked == 200);
  }
}

TEST_CASE("chebyshev: no random probe beats the minimum") {
  Rng rng(12);
  for (double kappa : {0.0, -1.0}) {
    const ModelSpace s(Curvature{kappa}, 2);
    for (int trial = 0; trial < 30; ++trial) {
      ExtensionInstance inst{Curvature{kappa}, 2, {}, {}, std::nullopt};
      for (int i = 0; i < 4; ++i) {
        inst.targets.push_back(random_point(s, rng, 2.0));
        inst.radii.push_back(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
      }
      const auto res = chebyshev_extend(inst);
      CHECK(res.certified);
      CHECK(std::abs(max_violation(s, inst.targets, inst.radii, res.point) - res.defect) < 1e-12);
      for (int p = 0; p < 2000; ++p) {
        const ModelPoint q = random_point_near(s, rng, res.point, 0.5);
        CHECK(max_violation(s, inst.targets, inst.radii, q) >= res.defect - 1e-9);
      }
    }
  }
}

TEST_CASE("chebyshev: finite+one extension of short maps from higher dimensions") {
  Rng rng(13);
  int worst_count = 0;
  double worst = -1e300;
  for (double kappa : {0.0, -1.0}) {
    for (int m = 2; m <= 5; ++m) {
      const ModelSpace src(Curvature{kappa}, m);
      const ModelSpace dst(Curvature{kappa}, 2);
      for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);  // 2..6
        const ModelPoint p = random_point(src, rng, 2.0);
        ExtensionInstance inst{Curvature{kappa}, 2, {}, {}, std::nullopt};
        for (int i = 0; i < n; ++i) {
          const ModelPoint x = random_point(src, rng, 2.0);
          inst.targets.push_back(project_to_plane(src, x));
          inst.radii.push_back(src.dist(p, x));
        }
        // the projection of p is a witness
        const ModelPoint pp = project_to_plane(src, p);
        REQUIRE(max_violation(dst, inst.targets, inst.radii, pp) <= 1e-9);
        const auto res = chebyshev_extend(inst);
        worst = std::max(worst, res.defect);
        if (res.defect > 1e-6) ++worst_count;
        CHECK(res.feasible);
      }
    }
  }
  CHECK(worst_count == 0);
  MESSAGE("largest defect over finite+one trials: " << worst);
}

TEST_CASE("dual certificate: examples") {
  const ModelConfig model{Curvature{0.0}, 2, {flat2(0, 0), flat2(2, 0)}};
  ExtensionInstance inst{Curvature{0.0}, 2, {flat2(0, 0), flat2(2, 0)}, {0, 0}, std::nullopt};
  auto c = dual_certificate(inst, model, WeightVector(Vec::Constant(2, 0.5)));
  CHECK(c.h == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(c.h_model == doctest::Approx(0.5).epsilon(1e-12));
  CHECK((c.z.coords - flat2(1, 0).coords).norm() < 1e-8);

  c = dual_certificate(inst, model, WeightVector::vertex(2, 1));
  CHECK(std::abs(c.h) < 1e-16);
  CHECK(c.h_model == 0.0);

  CHECK_THROWS(WeightVector(Vec::Zero(2)));
  CHECK_THROWS(dual_certificate(inst, model, WeightVector::uniform(3)));
}

TEST_CASE("dual certificate: random instances with dominated target distances") {
  Rng rng(14);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 1e300;
  for (int trial = 0; trial < 100; ++trial) {
    const double kappa = trial % 2 ? -1.0 : 0.0;
    const ModelSpace s(Curvature{kappa}, 2);
    const int n = 2 + trial % 4;
    const double shrink = 0.3 + 0.7 * u(rng);
    ModelConfig model{Curvature{kappa}, 2, {}};
    ExtensionInstance inst{Curvature{kappa}, 2, {}, std::vector<double>(n, 0.0), std::nullopt};
    for (int i = 0; i < n; ++i) {
      const ModelPoint x = random_point(s, rng, 2.0);
      model.points.push_back(x);
      // contraction towards the origin is short on a nonpositively curved plane
      inst.targets.push_back(s.geodesic(s.origin(), x, shrink * s.dist(s.origin(), x)));
    }
    Vec w(n);
    for (int i = 0; i < n; ++i) w[i] = u(rng) + 1e-3;
    const WeightVector alpha(w);
    const auto c = dual_certificate(inst, model, alpha);
    worst = std::min(worst, c.slack);
    CHECK(c.slack >= -1e-8);

    // closed forms of the target-side minimum
    double oracle_h = 0.0;
    if (kappa == 0.0) {
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          oracle_h += 0.5 * alpha[i] * alpha[j] * (inst.targets[i].coords - inst.targets[j].coords).squaredNorm();
    } else {
      Eigen::VectorXd m = Eigen::VectorXd::Zero(3);
      for (int i = 0; i < n; ++i) m += alpha[i] * inst.targets[i].coords;
      oracle_h = std::sqrt(-oracle::lorentz(m, m));
    }
    CHECK(c.h == doctest::Approx(oracle_h).epsilon(1e-9));
  }
  MESSAGE("smallest dual slack: " << worst);
}

TEST_CASE("dual certificate: model side from a (1+n) witness") {
  Rng rng(15);
  for (double kappa : {0.0, -1.0}) {
    const ModelSpace s(Curvature{kappa}, 2);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<ModelPoint> pts;
      for (int i = 0; i < 4; ++i) pts.push_back(random_point(s, rng, 1.5));
      const FiniteMetric m = FiniteMetric::from_points(s, pts);
      const auto r = check_1plusN(m, 0, Curvature{kappa});
      REQUIRE(r.witness);
      REQUIRE(r.verdict == Verdict::Pass);
      ModelConfig model{Curvature{kappa}, r.witness->dim, {}};
      ExtensionInstance inst{Curvature{kappa}, 2, {}, {}, std::nullopt};
      for (std::size_t i = 0; i < r.targets.size(); ++i) {
        model.points.push_back(r.witness->points[i + 1]);
        inst.targets.push_back(pts[r.targets[i]]);
        inst.radii.push_back(m(0, r.targets[i]));
      }
      const auto c = dual_certificate(inst, model, WeightVector::uniform(3));
      // the witness may undershoot each source distance by its slack
      CHECK(c.slack >= -1e-5 * (1 + std::abs(r.slack)));
    }
  }
}

TEST_CASE("four-point: sphere quadruples are feasible in the CBB direction") {
  Rng rng(16);
  const ModelSpace s(Curvature{1.0}, 2);
  int failures = 0;
  double worst = -1e300;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<ModelPoint> q;
    for (int i = 0; i < 4; ++i) q.push_back(random_sphere_point(s, rng));
    FourPointInput in;
    const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {2, 3}, {3, 1}}};
    for (int e = 0; e < 3; ++e) in.source[e] = in.target[e] = s.dist(q[pairs[e].first], q[pairs[e].second]);
    for (int i = 0; i < 3; ++i) in.radii[i] = s.dist(q[0], q[i + 1]);
    const auto r = four_point_decision(in, Curvature{1.0}, FourPointDirection::CBB);
    worst = std::max(worst, r.defect);
    if (!(r.defect <= 1e-7)) ++failures;
  }
  CHECK(failures == 0);
  MESSAGE("largest defect over sphere quadruples: " << worst);
}

TEST_CASE("four-point: tripod center has no image") {
  const FiniteMetric t = tripod_metric();
  FourPointInput in;
  in.source = {t(1, 2), t(2, 3), t(3, 1)};
  in.target = in.source;
  in.radii = {t(0, 1), t(0, 2), t(0, 3)};
  const auto r = four_point_decision(in, Curvature{0.0}, FourPointDirection::CBB);
  CHECK_FALSE(r.feasible);
  CHECK(std::abs(r.defect - (2 / std::sqrt(3.0) - 1)) < 1e-9);
  // the witness is the circumcenter
  const ModelSpace s(Curvature{0.0}, 2);
  for (const ModelPoint& v : r.triangle.points) CHECK(s.dist(v, r.witness) == doctest::Approx(2 / std::sqrt(3.0)));
}

TEST_CASE("four-point: square corners and center") {
  FourPointInput in;
  const double a = 2.0, d = 2 * std::sqrt(2.0);
  in.source = in.target = {a, a, d};
  in.radii = {std::sqrt(2.0), std::sqrt(2.0), std::sqrt(2.0)};
  const auto r = four_point_decision(in, Curvature{0.0}, FourPointDirection::CBB);
  CHECK(r.feasible);
  CHECK(std::abs(r.defect) < 1e-9);
  const ModelSpace s(Curvature{0.0}, 2);
  const ModelPoint mid = s.midpoint(r.triangle.points[0], r.triangle.points[2]);
  CHECK(s.dist(mid, r.witness) < 1e-6);
}

TEST_CASE("four-point: one radius zero forces the witness") {
  FourPointInput in;
  in.source = {3.0, 4.0, 5.0};
  in.target = {2.5, 4.0, 4.5};
  in.radii = {0.0, 2.6, 4.6};
  auto r = four_point_decision(in, Curvature{0.0}, FourPointDirection::CBB);
  CHECK(r.feasible);
  CHECK(ModelSpace(Curvature{0.0}, 2).dist(r.witness, r.triangle.points[0]) < 1e-6);

  in.radii = {0.0, 2.0, 4.6};  // 2.0 < |x0 x1| = 2.5 in the target
  r = four_point_decision(in, Curvature{0.0}, FourPointDirection::CBB);
  CHECK_FALSE(r.feasible);
  CHECK(r.defect > 0.0);
  CHECK(r.defect <= 0.5 + 1e-12);  // the forced vertex gives 0.5

  in.target = {3.5, 4.0, 4.5};
  CHECK_THROWS_AS(four_point_decision(in, Curvature{0.0}, FourPointDirection::CBB), GeometryError);
}

TEST_CASE("four-point: tree triples in the CAT direction") {
  const ModelSpace plane(Curvature{0.0}, 2);
  Rng rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int failures = 0, trials = 0;
  for (int seed = 0; seed < 20; ++seed) {
    const FiniteMetric t = tree_sample(10, seed);
    for (int k = 0; k < 25; ++k) {
      std::array<std::size_t, 3> v{};
      v[0] = rng() % 10;
      do v[1] = rng() % 10; while (v[1] == v[0]);
      do v[2] = rng() % 10; while (v[2] == v[0] || v[2] == v[1]);
      FourPointInput in;
      in.target = {t(v[0], v[1]), t(v[1], v[2]), t(v[2], v[0])};
      // planar source triangle dominating the tree distances, plus a random p in the plane
      const double grow = 1.0 + 0.5 * u(rng);
      for (int e = 0; e < 3; ++e) in.source[e] = grow * in.target[e];
      const auto tri = model_triangle(in.source[0], in.source[1], in.source[2], Curvature{0.0});
      REQUIRE(tri);
      const ModelConfig src = realize_triangle(*tri);
      const ModelPoint p = random_point_near(plane, rng, src.points[0], 3.0);
      for (int i = 0; i < 3; ++i) in.radii[i] = plane.dist(p, src.points[i]);
      const auto r = four_point_decision(in, Curvature{0.0}, FourPointDirection::CAT);
      ++trials;
      if (!(r.defect <= 1e-7)) ++failures;
    }
  }
  CHECK(trials == 500);
  CHECK(failures == 0);
}

TEST_CASE("four-point: CAT direction rejects long perimeters") {
  FourPointInput in;
  in.source = in.target = {2.2, 2.2, 2.2};
  in.radii = {1, 1, 1};
  CHECK_THROWS_AS(four_point_decision(in, Curvature{1.0}, FourPointDirection::CAT), GeometryError);
}

TEST_CASE("extend_map: fourth corner of a square under a rigid motion") {
  Mat d(4, 4);
  const double r2 = std::sqrt(2.0);
  d << 0, 1, r2, 1,
       1, 0, 1, r2,
       r2, 1, 0, 1,
       1, r2, 1, 0;
  const double th = 0.7;
  const Eigen::Vector2d shift(3.0, -1.0);
  auto move = [&](double x, double y) {
    const Eigen::Vector2d v(std::cos(th) * x - std::sin(th) * y + shift.x(), std::sin(th) * x + std::cos(th) * y + shift.y());
    return flat2(v.x(), v.y());
  };
  PartialShortMap f{FiniteMetric({"a", "b", "c", "d"}, d), Curvature{0.0}, 2, {}, std::nullopt};
  f.assigned.emplace(0, move(0, 0));
  f.assigned.emplace(1, move(1, 0));
  f.assigned.emplace(2, move(1, 1));
  const auto r = extend_map(f, {3});
  REQUIRE(r.success);
  const ModelSpace s(Curvature{0.0}, 2);
  // the congruent corner is tight on all three constraints
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(s.dist(move(0, 1), f.assigned.at(i)) - d(3, i)) < 1e-12);
  // it is not forced: the minimax image sits strictly inside the feasible lens
  CHECK(r.defect < 0.0);
  for (std::size_t i = 0; i < 3; ++i) CHECK(s.dist(r.map.assigned.at(3), r.map.assigned.at(i)) <= d(3, i) + 1e-9);
  CHECK(r.shortness <= 1e-9);
}

TEST_CASE("extend_map: projection of a scaled configuration") {
  Rng rng(18);
  const ModelSpace r3(Curvature{0.0}, 3);
  int failures = 0;
  double worst = -1e300;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 6;
    std::vector<ModelPoint> pts;
    for (int i = 0; i < n; ++i) pts.push_back(random_point(r3, rng, 2.0));
    const FiniteMetric m = FiniteMetric::from_points(r3, pts);
    PartialShortMap f{FiniteMetric(m.labels(), 1.5 * m.matrix()), Curvature{0.0}, 2, {}, std::nullopt};
    for (std::size_t i = 0; i < 3; ++i) f.assigned.emplace(i, project_to_plane(r3, pts[i]));
    const auto r = extend_map(f, {3, 4, 5});
    worst = std::max(worst, r.defect);
    if (!r.success || r.defect > 1e-7 || r.shortness > 1e-7) ++failures;
    CHECK(r.order.size() == 3);
  }
  CHECK(failures == 0);
  MESSAGE("largest step defect: " << worst);
}

TEST_CASE("extend_map: the hemisphere pole has no place on the circle") {
  const PartialShortMap f = hemisphere_fixture(8);
  CHECK(f.shortness_defect() <= 1e-12);
  const auto r = extend_map(f, {8});
  CHECK_FALSE(r.success);
  REQUIRE(r.failed_point);
  CHECK(*r.failed_point == 8);
  CHECK(std::abs(r.defect - 3 * pi / 8) < 1e-6);
  CHECK(r.blocking.size() == 2);

  std::vector<ModelPoint> y;
  std::vector<double> rad;
  for (const auto& [i, q] : f.assigned) {
    y.push_back(q);
    rad.push_back(pi / 2);
  }
  CHECK(std::abs(circle_minimax(y, rad) - 3 * pi / 8) < 1e-4);
}

TEST_CASE("extend_map: input checks and greedy order") {
  PartialShortMap f = hemisphere_fixture(4);
  CHECK_THROWS_AS(extend_map(f, {0}), GeometryError);
  CHECK_THROWS_AS(extend_map(f, {4, 4}), GeometryError);
  f.assigned.at(1) = circle_point(pi);  // no longer short
  CHECK_THROWS_AS(extend_map(f, {4}), GeometryError);

  // path a - b - c - d with only a assigned: greedy takes b first by label tie-break, given keeps order
  Mat d(4, 4);
  d << 0, 1, 2, 3,
       1, 0, 1, 2,
       2, 1, 0, 1,
       3, 2, 1, 0;
  PartialShortMap g{FiniteMetric({"a", "b", "c", "d"}, d), Curvature{0.0}, 1, {}, std::nullopt};
  g.assigned.emplace(0, ModelSpace(Curvature{0.0}, 1).origin());
  const auto greedy = extend_map(g, {3, 1, 2}, OrderPolicy::Greedy);
  CHECK(greedy.order == std::vector<std::size_t>{1, 2, 3});
  const auto given = extend_map(g, {3, 1, 2}, OrderPolicy::Given);
  CHECK(given.order == std::vector<std::size_t>{3, 1, 2});
  CHECK(given.success);
  CHECK(given.shortness <= 1e-7);
}

TEST_CASE("cone route: examples") {
  ExtensionInstance one{Curvature{1.0}, 2, {sphere_point(0.4, 1.0)}, {0.9}, std::nullopt};
  auto c = spherical_extend_via_cone(one);
  CHECK(c.defect <= 1e-9);

  const ModelPoint a = sphere_point(pi / 2, 0), b = sphere_point(pi / 2, pi / 2), z = sphere_point(pi / 2, pi / 4);
  ExtensionInstance two{Curvature{1.0}, 2, {a, b}, {pi / 4, pi / 4}, z};
  c = spherical_extend_via_cone(two);
  const ModelSpace s(Curvature{1.0}, 2);
  CHECK(s.dist(c.point, z) < 1e-6);
  CHECK(std::abs(c.defect) < 1e-9);
  const auto ch = chebyshev_extend(two);
  CHECK(ch.certified);
  CHECK(s.dist(ch.point, z) < 1e-6);
}

TEST_CASE("cone route: hemisphere agrees with the direct solve") {
  const PartialShortMap f = hemisphere_fixture(8);
  const auto c = spherical_extend_via_cone(f, 8);
  CHECK(c.degenerate);
  CHECK(c.lift_norm < 1e-9);
  CHECK_FALSE(c.center);
  CHECK(std::abs(c.defect - 3 * pi / 8) < 1e-6);
  const auto e = extend_map(f, {8});
  CHECK(std::abs(c.defect - e.defect) < 1e-6);
}

TEST_CASE("cone route: cross-validation against chebyshev with a center") {
  Rng rng(19);
  const ModelSpace s(Curvature{1.0}, 2);
  const ModelPoint z = sphere_point(0, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int agree = 0;
  for (int trial = 0; trial < 200; ++trial) {
    ExtensionInstance inst{Curvature{1.0}, 2, {}, {}, z};
    const ModelPoint p = random_point_near(s, rng, z, 1.2);
    const int n = 2 + trial % 4;
    for (int i = 0; i < n; ++i) {
      const ModelPoint y = random_point_near(s, rng, z, pi / 2);
      inst.targets.push_back(y);
      inst.radii.push_back(s.dist(p, y) * (0.8 + 0.4 * u(rng)));
    }
    const auto e = chebyshev_extend(inst);
    const auto c = spherical_extend_via_cone(inst);
    CHECK(e.certified);
    if (e.feasible) {
      CHECK(c.defect <= e.tol);
      CHECK(c.lift_margin >= -1e-12);
      ++agree;
    }
  }
  CHECK(agree > 20);
}

TEST_CASE("cone route: needs positive curvature") {
  ExtensionInstance inst{Curvature{0.0}, 2, {flat2(0, 0)}, {1.0}, std::nullopt};
  CHECK_THROWS_AS(spherical_extend_via_cone(inst), GeometryError);
}
