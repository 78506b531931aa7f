#include "alexcomp/fixtures.hpp"

#include "alexcomp/sampling.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace alexcomp {

FiniteMetric ivanov_metric() {
  // order: a b x y z q
  const double r3 = std::sqrt(3.0), r7 = std::sqrt(7.0);
  Mat d(6, 6);
  d << 0, 4, 2, 2, 2, 3,
       4, 0, 2, 2, 2, 1,
       2, 2, 0, 2, 3, 1,
       2, 2, 2, 0, 1, r3,
       2, 2, 3, 1, 0, r7,
       3, 1, 1, r3, r7, 0;
  return FiniteMetric({"a", "b", "x", "y", "z", "q"}, d);
}

FiniteMetric tripod_metric() {
  Mat d(4, 4);
  d << 0, 1, 1, 1,
       1, 0, 2, 2,
       1, 2, 0, 2,
       1, 2, 2, 0;
  return FiniteMetric({"c", "t1", "t2", "t3"}, d);
}

SampledMetric sphere_sample(int n, std::uint64_t seed, int dim) {
  if (n < 1 || dim < 1) throw GeometryError("sphere sample needs n >= 1 and dim >= 1");
  Rng rng(seed);
  const ModelSpace s(Curvature{1.0}, dim);
  ModelConfig cfg{Curvature{1.0}, dim, {}};
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    cfg.points.push_back(random_sphere_point(s, rng));
    labels.push_back("s" + std::to_string(i));
  }
  return {FiniteMetric::from_points(s, cfg.points, labels), cfg};
}

FiniteMetric tree_sample(int n, std::uint64_t seed) {
  if (n < 1) throw GeometryError("tree sample needs n >= 1");
  Rng rng(seed);
  std::uniform_real_distribution<double> len(0.2, 1.5);
  Mat d = Mat::Zero(n, n);
  std::vector<std::string> labels{"v0"};
  for (int i = 1; i < n; ++i) {
    const int parent = std::uniform_int_distribution<int>(0, i - 1)(rng);
    const double w = len(rng);
    for (int j = 0; j < i; ++j) d(i, j) = d(j, i) = d(parent, j) + w;
    labels.push_back("v" + std::to_string(i));
  }
  return FiniteMetric(labels, d);
}

PartialShortMap hemisphere_fixture(int n) {
  if (n < 2) throw GeometryError("hemisphere fixture needs n >= 2");
  const double pi = std::numbers::pi;
  Mat d = Mat::Zero(n + 1, n + 1);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    labels.push_back("e" + std::to_string(i));
    for (int j = 0; j < n; ++j) {
      const double a = 2.0 * pi * std::abs(i - j) / n;
      d(i, j) = std::min(a, 2.0 * pi - a);
    }
    d(i, n) = d(n, i) = 0.5 * pi;
  }
  labels.push_back("N");
  PartialShortMap f{FiniteMetric(labels, d), Curvature{1.0}, 1, {}, std::nullopt};
  const ModelSpace s = f.space();
  for (int i = 0; i < n; ++i) {
    Vec c(2);
    c << std::cos(2.0 * pi * i / n), std::sin(2.0 * pi * i / n);
    f.assigned.emplace(static_cast<std::size_t>(i), s.point(c));
  }
  return f;
}

}  // namespace alexcomp
