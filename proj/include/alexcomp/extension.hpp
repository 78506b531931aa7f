#pragma once

#include "alexcomp/barycentric.hpp"
#include "alexcomp/finite_metric.hpp"
#include "alexcomp/model_space.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace alexcomp {

/// Find q with |y^i q| <= r^i in the model space of the given curvature and dimension.
struct ExtensionInstance {
  Curvature curvature;
  int dim = 0;
  std::vector<ModelPoint> targets;
  std::vector<double> radii;
  /// kappa > 0: restrict to the ball B[center, pomega/2], which must contain the targets.
  std::optional<ModelPoint> center;

  ModelSpace space() const { return ModelSpace(curvature, dim); }
};

struct ExtensionOptions {
  std::uint64_t seed = 0;
  int subgradient_iters = 200;
  int random_starts = 8;  // kappa > 0 without a center
  std::optional<double> tol;
};

struct ExtensionResult {
  ModelPoint point;
  double defect = 0.0;  // max_i (|y^i q| - r^i)
  double tol = 0.0;
  bool feasible = false;
  /// Global minimum up to tolerance: kappa <= 0, or kappa > 0 with a center.
  bool certified = false;
  std::vector<std::size_t> active;  // constraints attaining the defect
};

/// 1e-7 * (1 + max radius).
double feasibility_tolerance(const ExtensionInstance& inst);

/**
 * Minimize g(q) = max_i (|y^i q| - r^i).
 *
 * Polyak subgradient steps from the weighted Frechet mean, then a log-barrier
 * Newton polish of the epigraph problem. For kappa > 0 without a center the
 * problem is not convex; the result comes from multistart and is not certified.
 */
ExtensionResult chebyshev_extend(const ExtensionInstance& inst, const ExtensionOptions& opt = {});

struct DualCertificate {
  double h = 0.0;        // min over the target space of sum alpha_i f^i
  double h_model = 0.0;  // the same minimum for the model configuration, in closed form
  double slack = 0.0;    // h_model - h
  ModelPoint z;          // argmin on the target side
};

/**
 * Both sides of h(z) <= h~(z~) for kappa <= 0. f^i is |y^i q|^2/2 (kappa = 0)
 * or cosh(s |y^i q|) (kappa < 0). The model side uses
 *   2 h~ = sum_{i<j} a_i a_j |x~i x~j|^2        (kappa = 0)
 *   h~^2 = sum_{i,j} a_i a_j cosh(s |x~i x~j|)  (kappa < 0)
 * where `model` holds x~1..x~n.
 */
DualCertificate dual_certificate(const ExtensionInstance& inst, const ModelConfig& model, const WeightVector& alpha);

// ---------------------------------------------------------------------------

enum class FourPointDirection { CBB, CAT };

/// Pairs are ordered (0,1), (1,2), (2,0); radii[i] = |p x^i|.
struct FourPointInput {
  std::array<double, 3> source{};  // |x^i x^j| in the source space
  std::array<double, 3> target{};  // |f(x^i) f(x^j)|
  std::array<double, 3> radii{};
};

struct FourPointResult {
  bool feasible = false;
  double defect = 0.0;
  double tol = 0.0;
  ModelPoint witness;    // candidate image of p
  ModelConfig triangle;  // the three target points in the model plane
};

/**
 * Can f: V3 -> target extend to V3 + p? The target triangle is realized in
 * the model plane and the question becomes a Chebyshev problem with radii |p x^i|.
 * CBB: the target is the model plane itself. CAT: the target triple is replaced by
 * its model triangle, a sufficient test for any CAT(kappa) target.
 */
FourPointResult four_point_decision(const FourPointInput& in, Curvature k, FourPointDirection dir,
                                    const ExtensionOptions& opt = {});

// ---------------------------------------------------------------------------

/// Map from part of a finite metric into a model space.
struct PartialShortMap {
  FiniteMetric source;
  Curvature curvature;
  int dim = 0;
  std::map<std::size_t, ModelPoint> assigned;
  std::optional<ModelPoint> center;

  ModelSpace space() const { return ModelSpace(curvature, dim); }
  /// max over assigned pairs of |f(a) f(b)| - |ab|.
  double shortness_defect() const;
};

enum class OrderPolicy { Given, Greedy };

struct ExtendMapResult {
  bool success = false;
  PartialShortMap map;
  std::vector<std::size_t> order;        // points in the order they were processed
  std::optional<std::size_t> failed_point;
  double defect = 0.0;                   // defect at the failed point, or the largest defect met
  std::vector<std::size_t> blocking;     // assigned source points active at the failure
  std::optional<ModelPoint> best_candidate;
  double shortness = 0.0;                // shortness_defect() of the output
};

/**
 * Extend f one point at a time. Greedy order takes the point with most assigned
 * neighbors at finite distance first, ties by label.
 */
ExtendMapResult extend_map(const PartialShortMap& f, const std::vector<std::size_t>& new_points,
                           OrderPolicy policy = OrderPolicy::Greedy, const ExtensionOptions& opt = {});

// ---------------------------------------------------------------------------

struct ConeResult {
  ModelPoint point;          // s-bar on the sphere
  double defect = 0.0;       // max_i (|y^i s-bar| - r^i)
  double lift_margin = 0.0;  // max over |s| <= 1 of min_i (<s, y^i> - cos r^i)
  double lift_norm = 0.0;    // |s|
  bool degenerate = false;   // s could not be slid to the sphere
  std::optional<ModelPoint> center;
  std::string note;
};

/**
 * kappa > 0 route through the Euclidean cone. The homogeneous lift s must satisfy
 * |s| <= 1 and <s, y^i> >= cos r^i; s is then slid along the center direction
 * to the unit sphere. Without a center the minimal enclosing cap center is used
 * when it has radius <= pi/2. When no slide is possible and s vanishes, s-bar
 * minimizes max_i (cos r^i - <s-bar, y^i>) on the sphere instead.
 */
ConeResult spherical_extend_via_cone(const ExtensionInstance& inst, const ExtensionOptions& opt = {});

/// Cone route for extending f to the source point p.
ConeResult spherical_extend_via_cone(const PartialShortMap& f, std::size_t p, const ExtensionOptions& opt = {});

}  // namespace alexcomp
