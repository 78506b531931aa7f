#pragma once

#include "alexcomp/finite_metric.hpp"
#include "alexcomp/model_space.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace alexcomp {

enum class Verdict { Pass, Fail, Undefined, Unknown };

const char* verdict_name(Verdict v);
/// Undefined tuples satisfy the comparison by convention.
inline bool counts_as_pass(Verdict v) { return v == Verdict::Pass || v == Verdict::Undefined; }

/// One evaluated tuple. The defect is the signed slack of the inequality (NaN when undefined).
struct TupleRecord {
  std::vector<std::size_t> indices;
  double defect = 0.0;
  Verdict verdict = Verdict::Pass;
  bool degenerate = false;  // a model angle had a zero adjacent side
  std::optional<ModelConfig> witness;
};

struct ComparisonReport {
  std::string predicate;
  Curvature curvature;
  double tol = 0.0;
  std::vector<TupleRecord> records;

  bool passed() const;
  std::size_t count(Verdict v) const;
  /// Record with the smallest defect among defined tuples, if any.
  const TupleRecord* worst() const;
};

/// 1e-9 * (1 + diameter).
double default_tolerance(const FiniteMetric& m);

/// Label-sorted index order used for deterministic enumeration.
std::vector<std::size_t> label_order(const FiniteMetric& m);

/**
 * (1+3)-point comparison: for every center p and unordered triple {x1,x2,x3}
 * of the remaining points, defect = 2*pi - sum of the three model angles at p.
 * Record indices are {p, x1, x2, x3}.
 */
ComparisonReport check_1plus3(const FiniteMetric& m, Curvature k, std::optional<double> tol = {});

/**
 * (2+2)-point comparison over every 4-set and each ordered choice of the pair
 * {p1,p2}. Defect = max of the two slacks
 *   angle(p1;p2,x1) + angle(p1;p2,x2) - angle(p1;x1,x2)  and the same at p2.
 * Record indices are {p1, p2, x1, x2}.
 */
ComparisonReport check_2plus2(const FiniteMetric& m, Curvature k, std::optional<double> tol = {});

/// Point-on-side defect |p~z~| - |pz| from the distances, with z on [xy].
/// Nonnegative means the CAT side of the comparison holds, nonpositive the CBB side.
double pos_defect(double d_px, double d_py, double d_xy, double d_xz, double d_pz, Curvature k);
double pos_defect(const FiniteMetric& m, std::size_t p, std::size_t x, std::size_t y, std::size_t z, Curvature k,
                  std::optional<double> tol = {});
double pos_defect(const ModelSpace& space, const ModelPoint& p, const ModelPoint& x, const ModelPoint& y,
                  const ModelPoint& z);

// ---------------------------------------------------------------------------
// (1+n)-point comparison

struct OnePlusNOptions {
  int restarts = 32;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  int max_iter = 20000;  // Douglas-Rachford iterations per solve
};

struct OnePlusNResult {
  std::size_t base = 0;
  Verdict verdict = Verdict::Unknown;  // Pass or Unknown
  double slack = 0.0;                  // best min_ij (|x~i x~j| - |xi xj|); +inf with fewer than two targets
  std::vector<std::size_t> targets;    // metric indices of x1..xn
  std::optional<ModelConfig> witness;  // p~ first, then x~1..x~n in the n-dimensional model space
  int solves = 0;
};

/**
 * Search for p~, x~1..x~n with |p~x~i| = |p xi| and |x~i x~j| >= |xi xj|.
 *
 * With the radii fixed, the pairwise condition is a lower bound on the angle
 * between unit directions u_i at p~, i.e. an upper bound on the Gram entries
 * <u_i,u_j>. The Gram matrices of n unit vectors in R^n are exactly the PSD
 * matrices with unit diagonal, so each slack level is a convex feasibility
 * problem, solved by Douglas-Rachford splitting and bisected over the slack.
 */
OnePlusNResult check_1plusN(const FiniteMetric& m, std::size_t base, Curvature k, const OnePlusNOptions& opt = {});

// ---------------------------------------------------------------------------
// (2n+2)-point comparison

struct ChainSpec {
  std::size_t x = 0, y = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (p^i, q^i)
};

struct ChainOptions {
  std::uint64_t seed = 0;
  int random_starts = 8;  // used for kappa > 0 in addition to the all-midpoints start
  std::optional<double> tol;
};

enum class ChainStatus { Evaluated, Undefined, NotRealizable };

struct ChainResult {
  Verdict verdict = Verdict::Unknown;
  ChainStatus status = ChainStatus::Evaluated;
  std::string reason;
  double defect = 0.0;        // min chain length - |xy|
  double chain_length = 0.0;  // minimal |x~z1| + ... + |zn y~|
  std::vector<double> t;      // z^i = geodesic(p~i, q~i, t_i |p~i q~i|)
  std::optional<ModelConfig> witness;  // x~, y~, p~1, q~1, ..., p~n, q~n in the 3-dimensional model space
  std::vector<ModelPoint> z;
};

ChainResult check_2Nplus2(const FiniteMetric& m, const ChainSpec& spec, Curvature k, const ChainOptions& opt = {});

// ---------------------------------------------------------------------------
// Overlap lemma in the model plane

/// sides[i] = |x^j x^k| and apex[i] = {|p^i x^j|, |p^i x^k|}, with (i,j,k) cyclic.
struct OverlapInput {
  std::array<double, 3> sides{};
  std::array<std::array<double, 2>, 3> apex{};
};

struct OverlapResult {
  bool rejected = false;
  std::string reason;
  /// overlap[i]: apex triangles p^k x^i x^j and p^j x^k x^i meet beyond x^i.
  std::array<bool, 3> overlap{};
  /// |x^j x^k| - |x'^j x^k| after rotating p^k onto p^j about x^i (positive: no overlap).
  std::array<double, 3> margin{};
  std::array<double, 3> apex_angle{};  // angle at p^i in p^i x^j x^k
  double angle_sum = 0.0;
  std::optional<ModelConfig> config;  // x^1, x^2, x^3, p^1, p^2, p^3 in the model plane
};

OverlapResult overlap_check(const OverlapInput& in, Curvature k, double tol = 1e-9);

}  // namespace alexcomp
