#include "dichot/functions.hpp"

#include <algorithm>
#include <stdexcept>

namespace dichot {

Outcome<RatInterval> RealFn::eval(const ExactReal& x, int p, Budget& budget) const {
  if (!eval_) throw std::logic_error("RealFn: empty evaluator");
  try {
    return eval_(x, p, budget);
  } catch (const EvaluationExhausted& e) {
    return e.diagnostics();
  } catch (const PrecisionLimitExceeded& e) {
    return budget.exhausted(e.what());
  }
}

RationalFn step_fn(const Rational& c, const Rational& lo_val, const Rational& hi_val) {
  RationalFn f;
  f.eval_q = [=](const Rational& q) { return ExactReal(q < c ? lo_val : hi_val); };
  f.image = [=](const RatInterval& I) {
    if (I.hi() < c) return RatInterval(lo_val);
    if (I.lo() >= c) return RatInterval(hi_val);
    return hull(RatInterval(lo_val), RatInterval(hi_val));
  };
  return f;
}

RationalFn stair_fn(std::vector<std::pair<Rational, Rational>> steps, const Rational& base) {
  std::sort(steps.begin(), steps.end());
  auto value = [steps, base](const Rational& q) {
    Rational v = base;
    for (const auto& [c, jump] : steps) {
      if (q >= c) v += jump;
    }
    return v;
  };
  RationalFn f;
  f.eval_q = [value](const Rational& q) { return ExactReal(value(q)); };
  // Increasing when every jump is positive; the general case takes a hull of
  // all the values the staircase assumes on I.
  f.image = [steps, value](const RatInterval& I) {
    RatInterval out(value(I.lo()));
    out = hull(out, RatInterval(value(I.hi())));
    for (const auto& [c, jump] : steps) {
      if (I.lo() < c && c <= I.hi()) {
        out = hull(out, RatInterval(value(c)));
        out = hull(out, RatInterval(Rational(value(c) - jump)));
      }
    }
    return out;
  };
  return f;
}

RealFn lift(const RationalFn& f, bool modulus_free) {
  if (!modulus_free && f.continuity_modulus) {
    return RealFn([f](const ExactReal& x, int p, Budget& budget) -> Outcome<RatInterval> {
      const int q = f.continuity_modulus(p + 2);
      if (!budget.charge(std::max(p, q))) return budget.exhausted("lift: budget exhausted");
      const Rational c = x.approx(q).mid();
      return widen(f.eval_q(c).approx(p + 2), pow2(-(p + 2)));
    });
  }
  if (!f.image) throw std::invalid_argument("lift: modulus-free lifting needs an interval image");
  return RealFn([f](const ExactReal& x, int p, Budget& budget) -> Outcome<RatInterval> {
    std::optional<RatInterval> last;
    for (int q = std::max(p, 0);; q += 2) {
      if (!budget.charge(q)) return budget.exhausted("lift: image did not narrow to 2^-" + std::to_string(p), last);
      const RatInterval I = x.approx(q);
      if (I.is_point()) return f.eval_q(I.lo()).approx(p);
      RatInterval J = f.image(I);
      if (J.within(p)) return J;
      last = I;
    }
  });
}

RealFn shifted(const RealFn& f, const Rational& c) {
  return RealFn(
      [f, c](const ExactReal& x, int p, Budget& b) -> Outcome<RatInterval> {
        auto r = f.eval(x, p, b);
        if (!r) return r;
        return RatInterval(Rational(r->lo() - c), Rational(r->hi() - c));
      },
      f.domain_lo(), f.domain_hi());
}

RealFn negated(const RealFn& f) {
  return RealFn(
      [f](const ExactReal& x, int p, Budget& b) -> Outcome<RatInterval> {
        auto r = f.eval(x, p, b);
        if (!r) return r;
        return -*r;
      },
      f.domain_lo(), f.domain_hi());
}

RealFn reflected(const RealFn& f) {
  return RealFn([f](const ExactReal& x, int p, Budget& b) { return f.eval(ExactReal(1) - x, p, b); });
}

Outcome<RatInterval> SpanFn::eval(const ExactReal& x, int p, Budget& budget) const {
  if (terms.empty()) return RatInterval(Rational(0));
  // Each product k_i * f_i(x) is computed at q with |k_i|, |f_i| bounded by
  // their coarse enclosures; raise q until the sum is narrow enough.
  for (int extra = 2 + static_cast<int>(terms.size());; extra *= 2) {
    const int q = p + extra;
    if (q > precision_limit()) return budget.exhausted("SpanFn: precision limit");
    RatInterval sum(Rational(0));
    for (const auto& t : terms) {
      auto v = t.part.base.eval(x, q, budget);
      if (!v) return v;
      sum = sum + t.coefficient.approx(q) * *v;
    }
    if (sum.within(p)) return sum;
  }
}

RealFn SpanFn::as_real_fn() const {
  SpanFn self = *this;
  return RealFn([self](const ExactReal& x, int p, Budget& b) { return self.eval(x, p, b); });
}

bool sampled_monotone(const MonotoneFn& f, const std::vector<Rational>& points, int p, Budget& budget) {
  std::vector<Rational> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  const RealFn g = f.increasing();
  std::vector<RatInterval> vals;
  for (const auto& q : sorted) {
    auto v = g.at(q, p, budget);
    if (!v) return false;
    vals.push_back(*v);
  }
  const Rational slack = pow2(-p);
  // The exact values satisfy v_i <= v_j for i < j iff no enclosure pair proves otherwise.
  Rational running_lo = vals.empty() ? Rational(0) : vals.front().lo();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i > 0 && running_lo > vals[i].hi() + slack) return false;
    running_lo = max(running_lo, vals[i].lo());
  }
  return true;
}

}  // namespace dichot
