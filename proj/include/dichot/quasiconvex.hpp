#pragma once

#include "dichot/functions.hpp"
#include "dichot/streams.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace dichot {

/// inf_approx(I, p) is within 2^-p of inf { f(x) : x in I }, I inside [0, 1].
/// May throw EvaluationExhausted.
using InfOracle = std::function<Rational(const RatInterval&, int)>;

struct InfPositive {
  Rational lower;  ///< inf f > lower > 0
  ExactReal witness_mid;
  Rational witness_point;
  std::size_t step = 0;  ///< bisection step that certified it (0 when found by the final tests)
};

/// f(approach_points[n-1]) < 2^-n for every tested n while f(z) > 0: the
/// function drops towards 0 along a sequence converging to a point where it
/// is positive.
struct InfZeroEvidence {
  ExactReal z;
  Rational z_point;
  RatInterval fz;
  ConvergentSeq approach;
  std::vector<Rational> approach_points;
  std::vector<RatInterval> approach_values;
  Rational resolution;  ///< |approach_points[n-1] - z| <= max(2^-n, resolution)
};

using InfResult = std::variant<InfPositive, InfZeroEvidence>;

struct InfStep {
  std::size_t n = 0;
  Rational l, r, m;
  RatInterval fm, inf_left, inf_right;
  bool lambda = false;
  char branch = '?';  ///< 'P' positive, 'R' keep right half, 'L' keep left half
};

struct InfTrace {
  std::vector<InfStep> steps;
  std::vector<Rational> alpha_tests;  ///< 2^-n thresholds tested in the second phase
};

/// Positive infimum or evidence that it is 0, for f positive and quasi-convex
/// on [0, 1] with an infimum oracle. The bisection depth is
/// budget.max_precision(). When `quasi_convex_trusted` is false the points the
/// bisection queried are checked for quasi-convexity before answering.
Outcome<InfResult> inf_dichotomy(const RealFn& f, const InfOracle& inf, Budget& budget, InfTrace* trace = nullptr,
                                 bool quasi_convex_trusted = true);

struct QuasiConvexViolation {
  Rational x, y, lambda;
  RatInterval f_mid, f_x, f_y;
};

struct QuasiConvexReport {
  std::vector<QuasiConvexViolation> violations;
  std::size_t checked = 0;
  bool ok() const { return violations.empty(); }
};

struct Triple {
  Rational x, y, lambda;
};

/// Reports triples where f(lambda x + (1 - lambda) y) > max(f(x), f(y)) is certified.
Outcome<QuasiConvexReport> quasiconvex_check(const RealFn& f, const std::vector<Triple>& triples, int p,
                                             Budget& budget);

/// n x n grid of (x, y) pairs on [0, 1] with lambda in {1/4, 1/2, 3/4}.
std::vector<Triple> grid_triples(int n);

/// t(x) = max(0, 1 - |x - z| / eps).
RealFn spike(const Rational& z, const Rational& eps);
Rational spike_value(const Rational& z, const Rational& eps, const Rational& x);

/// 1 - (1 - 1/m) t_{r_m, 2^-m} when one_at = m, constant 1 otherwise.
RealFn remark19_family(const SeparatedSeqFixture& points, std::optional<std::size_t> one_at);
InfOracle remark19_inf(const SeparatedSeqFixture& points, std::optional<std::size_t> one_at);

// Built-in oracles.
/// f(x) = k (x - c)^2 + s, k >= 0.
InfOracle quadratic_inf(const Rational& c, const Rational& k, const Rational& s);
InfOracle constant_inf(const Rational& v);
/// Grid minimum minus the Lipschitz slack, for f with |f(x) - f(y)| <= L |x - y|.
InfOracle lipschitz_inf(const RealFn& f, const Rational& L, std::size_t max_points = 1 << 16);
/// Branch and bound over an interval extension of f.
InfOracle branch_and_bound_inf(std::function<RatInterval(const RatInterval&)> image, std::size_t max_boxes = 1 << 16);

/// f(x) = x for x > 0 and f(0) = 1, with its exact infimum oracle. The
/// infimum is 0 and f is not defined as a computable function at 0 from
/// approximations alone.
std::pair<RealFn, InfOracle> engineered_zero_inf();

}  // namespace dichot
