#pragma once

#include "dichot/functions.hpp"
#include "dichot/ivt.hpp"

#include <memory>
#include <variant>
#include <vector>

namespace dichot {

enum class Side { Left, Right };

/// Limit of f(t) as t -> x from the given side, within 2^-p. x = 0 (Left)
/// and x = 1 (Right) use the constant extension and return f(x). Values are
/// bracketed by repeated root searches for f(t) = y on [0, x]; a bracket
/// closed from above because no crossing was found within the bisection depth
/// is budget-relative. The returned real refines lazily with a copy of the
/// budget's limits and throws EvaluationExhausted when that fails.
Outcome<ExactReal> one_sided_limit(const MonotoneFn& f, const Rational& x, Side side, int p, Budget& budget);

/// One-sided limit of sum k_i * f_i.
Outcome<ExactReal> span_one_sided_limit(const SpanFn& f, const Rational& x, Side side, int p, Budget& budget);

struct StepPoint {
  enum class Flag { NearLevel, StepCandidate };
  Rational x;
  Flag flag = Flag::NearLevel;
  Rational level;  ///< the level y_i that produced this point (f(x) for 0 and 1)
  Rational gap;    ///< StepCandidate: |f(x) - level| > gap; NearLevel: |f(x) - level| < gap
  Rational bracket_lo, bracket_hi;  ///< StepCandidate: f(lo) < level < f(hi), hi - lo tiny
};

struct StepPartition {
  std::vector<StepPoint> points;  ///< sorted, first 0, last 1
  Rational eps;
  std::vector<Rational> levels;
};

/// Points 0 = x_1 < ... < x_n = 1 such that f varies by at most eps on each
/// open (x_i, x_{i+1}); points where f jumps across a level are flagged.
Outcome<StepPartition> eps_steps(const MonotoneFn& f, const Rational& eps, Budget& budget);

struct DiscontinuityPoint {
  ExactReal xi;
  Rational point;                   ///< rational representative inside the bracket
  Rational bracket_lo, bracket_hi;  ///< the jump lies in [bracket_lo, bracket_hi]
  Rational gap_lower;               ///< f(bracket_hi) - f(bracket_lo) > gap_lower
  int level = 0;                    ///< eps_k = 2^-level that found it
};

struct Star {};

using DiscontinuityEntry = std::variant<DiscontinuityPoint, Star>;

/// Lazy stream of discontinuities of an increasing function. Entry n tests
/// one level of the eps_k grid (k = 1, 2, ...); it is a Point the first time a
/// jump larger than eps_k/2 is bracketed there, Star otherwise.
class DiscontinuityStream {
 public:
  DiscontinuityStream(MonotoneFn f, Budget budget);

  /// Entry n (from 1). Exhaustion is reported as Exhausted and is sticky.
  Outcome<DiscontinuityEntry> at(std::size_t n);
  Outcome<std::vector<DiscontinuityEntry>> prefix(std::size_t count);
  const Budget& budget() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

Outcome<std::vector<DiscontinuityEntry>> enumerate_discontinuities(const MonotoneFn& f, std::size_t count,
                                                                   Budget& budget);

/// Same for sum k_i * f_i: per-term streams gated by "k_i != 0", interleaved,
/// then each candidate bracket is re-tested on the sum at thresholds 1/l.
Outcome<std::vector<DiscontinuityEntry>> span_discontinuities(const SpanFn& f, std::size_t count, Budget& budget);

std::size_t count_points(const std::vector<DiscontinuityEntry>& entries);

}  // namespace dichot
