#include "doctest.h"
#include "support/oracles.hpp"

#include "alexcomp/barycentric.hpp"
#include "alexcomp/sampling.hpp"

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

Vec random_weights(Rng& rng, int n, double floor = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec w(n);
  for (int i = 0; i < n; ++i) w[i] = floor + u(rng);
  return w / w.sum();
}

}  // namespace

TEST_CASE("argmin: examples") {
  const FunctionArray one(Curvature{0.0}, 2, {flat2(0.3, -2.0)});
  CHECK((bary_simplex(one, WeightVector::uniform(1)).point.coords - flat2(0.3, -2.0).coords).norm() < 1e-12);

  const FunctionArray tri(Curvature{0.0}, 2, {flat2(0, 0), flat2(1, 0), flat2(0, 1)});
  const auto r = bary_simplex(tri, WeightVector::uniform(3));
  CHECK(r.converged);
  CHECK((r.point.coords - flat2(1.0 / 3, 1.0 / 3).coords).norm() < 1e-9);

  const ModelSpace s2(Curvature{1.0}, 2);
  Vec a(3), b(3);
  a << 1, 0, 0;
  b << 0, std::cos(0.4), std::sin(0.4);
  const FunctionArray sph(Curvature{1.0}, 2, {s2.point(a), s2.point(b)});
  const auto m = bary_simplex(sph, WeightVector::uniform(2));
  CHECK(m.converged);
  CHECK(s2.dist(m.point, s2.midpoint(sph.anchors[0], sph.anchors[1])) < 1e-9);
}

TEST_CASE("argmin: the minimizer does not depend on the start") {
  Rng rng(21);
  for (double kappa : {0.0, 1.0, -1.0}) {
    const ModelSpace s(Curvature{kappa}, 3);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<ModelPoint> a;
      // on the sphere, anchors within pi/8 keep every distance below pi/4 where d cot d >= pi/4
      for (int i = 0; i < 4; ++i) a.push_back(random_point(s, rng, kappa > 0 ? pi / 8 : 2.0));
      const FunctionArray fa(Curvature{kappa}, 3, a);
      const Vec w = random_weights(rng, 4);
      const ArgminOptions opt;
      const auto r1 = argmin_strongly_convex(fa, w, a[0], opt);
      const auto r2 = argmin_strongly_convex(fa, w, a[3], opt);
      REQUIRE(r1.converged);
      REQUIRE(r2.converged);
      // a gradient of size g at a c-convex function puts the point within g/c of the minimum
      const double c = kappa > 0 ? pi / 4 : 1.0;
      CHECK(s.dist(r1.point, r2.point) <= (r1.grad_norm + r2.grad_norm) / c + 1e-12);
    }
  }
}

TEST_CASE("argmin: iteration cap is reported") {
  const FunctionArray tri(Curvature{0.0}, 2, {flat2(0, 0), flat2(4, 0), flat2(0, 4)});
  ArgminOptions opt;
  opt.max_iter = 1;
  const auto r = bary_simplex(tri, WeightVector(Vec::Constant(3, 1.0)), opt);
  CHECK_FALSE(r.converged);
  CHECK(r.grad_norm > 0.0);
}

TEST_CASE("bary_simplex: flat closed form") {
  Rng rng(22);
  const ModelSpace s(Curvature{0.0}, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    std::vector<ModelPoint> a;
    for (int i = 0; i < n; ++i) a.push_back(random_point(s, rng, 5.0));
    const FunctionArray fa(Curvature{0.0}, 3, a);
    const Vec w = random_weights(rng, n);
    Eigen::VectorXd avg = Eigen::VectorXd::Zero(3);
    for (int i = 0; i < n; ++i) avg += w[i] * a[i].coords;
    CHECK((bary_simplex(fa, WeightVector(w)).point.coords - avg).norm() < 1e-9);
  }
}

TEST_CASE("bary_simplex: vertices and faces") {
  Rng rng(23);
  for (double kappa : {0.0, 1.0, -1.0}) {
    const ModelSpace s(Curvature{kappa}, 2);
    std::vector<ModelPoint> a;
    for (int i = 0; i < 4; ++i) a.push_back(random_point(s, rng, kappa > 0 ? pi / 4 : 2.0));
    const FunctionArray fa(Curvature{kappa}, 2, a);
    for (int i = 0; i < 4; ++i) CHECK(s.dist(bary_simplex(fa, WeightVector::vertex(4, i)).point, a[i]) < 1e-12);

    Vec w = random_weights(rng, 4);
    w[2] = 0.0;
    const FunctionArray face(Curvature{kappa}, 2, {a[0], a[1], a[3]});
    Vec wf(3);
    wf << w[0], w[1], w[3];
    CHECK(s.dist(bary_simplex(fa, WeightVector(w)).point, bary_simplex(face, WeightVector(wf)).point) < 1e-9);
  }
}

TEST_CASE("bary_simplex: stays in a small ball on the sphere") {
  Rng rng(24);
  const ModelSpace s(Curvature{1.0}, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const ModelPoint c = random_sphere_point(s, rng);
    std::vector<ModelPoint> a;
    for (int i = 0; i < 5; ++i) a.push_back(random_point_near(s, rng, c, pi / 4));
    const FunctionArray fa(Curvature{1.0}, 2, a);
    const auto r = bary_simplex(fa, WeightVector(random_weights(rng, 5)));
    CHECK(r.converged);
    CHECK(oracle::sphere_dist(r.point.coords, c.coords) <= pi / 4 + 1e-12);
  }
}

TEST_CASE("bary_simplex: cosh form only on the hyperbolic chart") {
  CHECK_THROWS_AS(FunctionArray(Curvature{0.0}, 2, {flat2(0, 0)}, FunctionForm::CoshDist), GeometryError);
  CHECK_THROWS_AS(FunctionArray(Curvature{0.0}, 2, {flat2(0, 0)}, FunctionForm::HalfSquaredDist, 0.0), GeometryError);
  CHECK_THROWS_AS(FunctionArray(Curvature{0.0}, 2, {}), GeometryError);

  // on the hyperboloid the cosh barycenter is the normalized weighted sum of the anchors
  Rng rng(25);
  const ModelSpace h(Curvature{-1.0}, 2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<ModelPoint> a;
    for (int i = 0; i < 3; ++i) a.push_back(random_point(h, rng, 2.0));
    const FunctionArray fa(Curvature{-1.0}, 2, a, FunctionForm::CoshDist);
    const Vec w = random_weights(rng, 3);
    Eigen::VectorXd m = Eigen::VectorXd::Zero(3);
    for (int i = 0; i < 3; ++i) m += w[i] * a[i].coords;
    m /= std::sqrt(-oracle::lorentz(m, m));
    // compared in coordinates: arccosh near 1 cannot resolve below ~1e-8
    CHECK((bary_simplex(fa, WeightVector(w)).point.coords - m).norm() < 1e-9 * m.norm());
  }
}

TEST_CASE("weights: normalization and validation") {
  Vec x(3);
  x << 1, 2, 1;
  const WeightVector w(x);
  CHECK(std::abs(w.x().sum() - 1.0) < 1e-15);
  CHECK(w[1] == doctest::Approx(0.5));
  x << 1, -0.1, 1;
  CHECK_THROWS_AS(WeightVector{x}, GeometryError);
  x << 1, NAN, 1;
  CHECK_THROWS_AS(WeightVector{x}, GeometryError);
  CHECK_THROWS_AS(WeightVector{Vec::Zero(3)}, GeometryError);
}

TEST_CASE("superset order") {
  Vec v(3), w(3);
  v << 1, 2, 3;
  w << 1, 1, 3;
  CHECK(supset_dominates(v, w));
  CHECK_FALSE(supset_dominates(w, v));
  CHECK(supset_dominates(v, v));
  CHECK_THROWS_AS(supset_dominates(v, Vec::Zero(2)), GeometryError);
}

TEST_CASE("nu inverts f on the image of sigma") {
  Rng rng(26);
  for (double kappa : {0.0, -1.0, 1.0}) {
    const ModelSpace s(Curvature{kappa}, 2);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<ModelPoint> a;
      for (int i = 0; i < 3; ++i) a.push_back(random_point(s, rng, kappa > 0 ? pi / 4 : 2.0));
      const FunctionArray fa(Curvature{kappa}, 2, a);
      const ModelPoint p = bary_simplex(fa, WeightVector(random_weights(rng, 3, 0.05))).point;
      const Vec v = fa.values(p);
      const auto nu = h_v_argmin(fa, v);
      CHECK(nu.converged);
      CHECK(s.dist(nu.point, p) < 1e-6);
      // identical inputs, identical outputs
      CHECK(s.dist(h_v_argmin(fa, v).point, nu.point) == 0.0);
    }
  }
}

TEST_CASE("nu of a huge constant array is the two-anchor midpoint") {
  const FunctionArray fa(Curvature{0.0}, 2, {flat2(-1, 2), flat2(3, 0)});
  const auto r = h_v_argmin(fa, Vec::Constant(2, 1e6));
  CHECK((r.point.coords - flat2(1, 1).coords).norm() < 1e-6);
}

TEST_CASE("C1/2 bound for the inverse") {
  Rng rng(27);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = -1e300;
  int checked = 0;
  for (double kappa : {0.0, -1.0}) {
    for (FunctionForm form : {FunctionForm::HalfSquaredDist, FunctionForm::CoshDist}) {
      if (form == FunctionForm::CoshDist && kappa == 0.0) continue;
      const ModelSpace s(Curvature{kappa}, 2);
      std::vector<ModelPoint> a;
      for (int i = 0; i < 3; ++i) a.push_back(random_point(s, rng, 1.5));
      const FunctionArray fa(Curvature{kappa}, 2, a, form);
      const int pairs = form == FunctionForm::CoshDist ? 250 : 375;
      for (int k = 0; k < pairs; ++k) {
        const Vec base = fa.values(random_point(s, rng, 1.5));
        Vec v = base, w = base;
        for (int i = 0; i < 3; ++i) {
          v[i] += 0.5 * u(rng);
          w[i] += 0.5 * u(rng);
        }
        const double d = s.dist(h_v_argmin(fa, v).point, h_v_argmin(fa, w).point);
        const double inf = (v - w).cwiseAbs().maxCoeff();
        worst = std::max(worst, d * d - 2 * inf);
        CHECK(d * d <= 2 * inf + 1e-8);
        ++checked;
      }
    }
  }
  CHECK(checked == 1000);
  MESSAGE("largest |pq|^2 - 2|v-w|: " << worst);
}

TEST_CASE("sigma is Lipschitz on a compact weight region") {
  Rng rng(28);
  for (double kappa : {0.0, 1.0, -1.0}) {
    const ModelSpace s(Curvature{kappa}, 2);
    std::vector<ModelPoint> a;
    for (int i = 0; i < 3; ++i) a.push_back(random_point(s, rng, kappa > 0 ? pi / 4 : 2.0));
    double diam = 0.0;
    for (auto& p : a)
      for (auto& q : a) diam = std::max(diam, s.dist(p, q));
    const FunctionArray fa(Curvature{kappa}, 2, a);
    double ratio = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const Vec x = random_weights(rng, 3, 0.1), y = random_weights(rng, 3, 0.1);
      const double d = s.dist(bary_simplex(fa, WeightVector(x)).point, bary_simplex(fa, WeightVector(y)).point);
      ratio = std::max(ratio, d / (x - y).lpNorm<1>());
    }
    // flat: sigma(x) - sigma(y) = sum (x_i - y_i)(a_i - a_0) gives the bound diam/2 exactly
    if (kappa == 0.0) CHECK(ratio <= 0.5 * diam + 1e-9);
    CHECK(std::isfinite(ratio));
    CHECK(ratio < 10 * diam);
    MESSAGE("kappa " << kappa << ": Lipschitz ratio " << ratio << ", anchor diameter " << diam);
  }
}

TEST_CASE("f(sigma(x)) lies on the frontier of the superset") {
  Rng rng(29);
  for (double kappa : {0.0, 1.0, -1.0}) {
    const ModelSpace s(Curvature{kappa}, 2);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<ModelPoint> a;
      for (int i = 0; i < 3; ++i) a.push_back(random_point(s, rng, kappa > 0 ? pi / 4 : 2.0));
      const FunctionArray fa(Curvature{kappa}, 2, a);
      const ModelPoint p = bary_simplex(fa, WeightVector(random_weights(rng, 3))).point;
      const Vec fp = fa.values(p);
      for (int k = 0; k < 500; ++k) {
        const ModelPoint q = random_point_near(s, rng, p, 0.5);
        CHECK((fa.values(q) - fp).maxCoeff() >= -1e-8);
      }
    }
  }
}
