#include "alexcomp/sampling.hpp"

#include <cmath>

namespace alexcomp {

Vec random_unit(Rng& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(n);
  do {
    for (int i = 0; i < n; ++i) v[i] = g(rng);
  } while (v.norm() < 1e-12);
  return v.normalized();
}

ModelPoint random_point(const ModelSpace& space, Rng& rng, double radius) {
  return random_point_near(space, rng, space.origin(), radius);
}

ModelPoint random_point_near(const ModelSpace& space, Rng& rng, const ModelPoint& center, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::pow(u(rng), 1.0 / space.dim());
  const Mat basis = space.tangent_basis(center);
  const Vec dir = basis * random_unit(rng, space.dim());
  return space.exp(center, dir, r);
}

ModelPoint random_sphere_point(const ModelSpace& space, Rng& rng) {
  if (space.chart() != Chart::Sphere) throw GeometryError("random_sphere_point needs the sphere chart");
  return ModelPoint{Chart::Sphere, random_unit(rng, space.ambient_dim())};
}

}  // namespace alexcomp
