#pragma once

#include "dichot/outcome.hpp"
#include "dichot/real.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace dichot {

/// Partial function on exact reals. A Decided enclosure contains f(x) and has
/// width <= 2^-p; evaluation may exhaust its budget (typically at a
/// discontinuity).
class RealFn {
 public:
  using Evaluator = std::function<Outcome<RatInterval>(const ExactReal&, int, Budget&)>;

  RealFn() = default;
  explicit RealFn(Evaluator eval, Rational lo = 0, Rational hi = 1)
      : eval_(std::move(eval)), lo_(std::move(lo)), hi_(std::move(hi)) {}

  Outcome<RatInterval> eval(const ExactReal& x, int p, Budget& budget) const;
  Outcome<RatInterval> at(const Rational& q, int p, Budget& budget) const { return eval(ExactReal(q), p, budget); }

  const Rational& domain_lo() const { return lo_; }
  const Rational& domain_hi() const { return hi_; }

 private:
  Evaluator eval_;
  Rational lo_{0};
  Rational hi_{1};
};

/// Function total on the rationals of its domain. `image`, when present, is an
/// interval extension: image(I) contains f(q) for every rational q in I.
struct RationalFn {
  std::function<ExactReal(const Rational&)> eval_q;
  std::function<RatInterval(const RatInterval&)> image;
  /// Optional modulus of continuity: |x - y| <= 2^-m(p) implies |f(x) - f(y)| <= 2^-p.
  std::function<int(int)> continuity_modulus;
};

/// q -> lo_val for q < c, hi_val for q >= c.
RationalFn step_fn(const Rational& c, const Rational& lo_val, const Rational& hi_val);

/// Increasing staircase base + sum of jump_i * [q >= c_i].
RationalFn stair_fn(std::vector<std::pair<Rational, Rational>> steps, const Rational& base = 0);

/// Extends f to exact reals. Modulus-free lifting refines the argument until
/// the interval image is narrow enough (exhausting the budget at a jump);
/// otherwise f.continuity_modulus picks the argument precision directly.
RealFn lift(const RationalFn& f, bool modulus_free = true);

// Pointwise transformations.
RealFn shifted(const RealFn& f, const Rational& c);   ///< f(x) - c
RealFn negated(const RealFn& f);                        ///< -f(x)
RealFn reflected(const RealFn& f);                      ///< f(1 - x) on [0, 1]

enum class Direction { Increasing, Decreasing };

struct MonotoneFn {
  RealFn base;
  Direction direction = Direction::Increasing;

  /// The increasing function this represents (negated when decreasing).
  RealFn increasing() const { return direction == Direction::Increasing ? base : negated(base); }
};

/// Element of the span of increasing functions: sum of coefficient * part.
struct SpanFn {
  struct Term {
    ExactReal coefficient;
    MonotoneFn part;
  };
  std::vector<Term> terms;

  Outcome<RatInterval> eval(const ExactReal& x, int p, Budget& budget) const;
  RealFn as_real_fn() const;
};

/// Sampled monotonicity check: for every rational pair q < r, f(q) <= f(r) + 2^-p.
bool sampled_monotone(const MonotoneFn& f, const std::vector<Rational>& points, int p, Budget& budget);

}  // namespace dichot
