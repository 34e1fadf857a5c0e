#include "dichot/ishihara.hpp"

#include <memory>

namespace dichot {

Outcome<RatInterval> distance_at(const RealFn& f, const ExactReal& y, const ExactReal& x, int p, Budget& budget) {
  auto fy = f.eval(y, p + 1, budget);
  if (!fy) return fy;
  auto fx = f.eval(x, p + 1, budget);
  if (!fx) return fx;
  return abs(*fy - *fx);
}

namespace {

Outcome<SplitResult> split_distance(const RealFn& f, const ExactReal& y, const ExactReal& x, const Rational& a,
                                    const Rational& b, Budget& budget) {
  auto d = distance_at(f, y, x, split_precision(a, b), budget);
  if (!d) return d.diagnostics();
  return split_interval(*d, a, b);
}

}  // namespace

Outcome<TrickOneResult> trick_one(const RealFn& f, const ConvergentSeq& xs, const Rational& alpha,
                                  const Rational& beta, Budget& budget) {
  if (!(alpha < beta)) throw PreconditionFailed(PreconditionFailed::Kind::InvalidArgument, "trick_one: needs alpha < beta");
  // Any distance is >= 0 > alpha.
  if (alpha < 0) return TrickOneResult{WitnessAbove{1, alpha}};

  const Rational gamma = alpha + (beta - alpha) / 3;
  const Rational gamma2 = alpha + 2 * (beta - alpha) / 3;
  const ExactReal x = xs.limit_point;

  // lambda_n = 1 once some k <= n has |f(x_k) - f(x)| > gamma.
  BinarySeq lambda = BinarySeq::from_predicate([=, &budget](std::size_t k) {
    auto s = split_distance(f, xs.term(k), x, gamma, gamma2, budget);
    if (!s) throw EvaluationExhausted(s.diagnostics());
    return *s == SplitResult::IsAbove;
  });
  const ExactReal z = limit(splice(lambda, xs));

  // z = x when lambda is all zero; z = x_m with a far value otherwise.
  auto at_z = split_distance(f, z, x, Rational(0), gamma, budget);
  if (!at_z) return at_z.diagnostics();
  if (*at_z == SplitResult::IsBelow) return TrickOneResult{AllBelow{beta}};

  // f(z) != f(x), so z != x: a positive lower bound on |z - x| bounds the search.
  try {
    for (int p = 1;; ++p) {
      if (!budget.charge(p)) return budget.exhausted("trick_one: |z - x| not separated from 0");
      const RatInterval gap = abs(z.approx(p) - x.approx(p));
      if (gap.lo() > 0) {
        int q = 1;
        while (pow2(-q) >= gap.lo() / 2) ++q;
        const std::size_t horizon = xs.modulus(q);
        if (auto m = lambda.first_one(horizon)) return TrickOneResult{WitnessAbove{*m, gamma}};
        return budget.exhausted("trick_one: no flip before the modulus bound (modulus or extensionality violated)");
      }
    }
  } catch (const EvaluationExhausted& e) {
    return e.diagnostics();
  }
}

Outcome<TrickTwoResult> trick_two(const RealFn& f, const ConvergentSeq& xs, const Rational& beta,
                                  const OmniscienceOracle& oracle, Budget& budget, TrickTwoOptions options) {
  if (beta <= 0) throw PreconditionFailed(PreconditionFailed::Kind::InvalidArgument, "trick_two: needs beta > 0");
  const Rational half = beta / 2;
  const Rational twice = beta * 2;

  InfinitelyOften far;
  // tail_below[j-1]: trick_one(beta/2, beta) on the tail starting at 2^(j-1) said AllBelow.
  auto tail_below = std::make_shared<std::vector<bool>>();

  for (std::size_t j = 1; j <= options.max_tails; ++j) {
    const std::size_t start = std::size_t{1} << (j - 1);
    const ConvergentSeq tail = xs.tail(start);
    auto a = trick_one(f, tail, half, beta, budget);
    if (!a) return a.diagnostics();
    if (std::holds_alternative<AllBelow>(*a)) return TrickTwoResult{EventuallyBelow{start}};
    tail_below->push_back(false);

    FarIndex hit{start + std::get<WitnessAbove>(*a).n - 1, std::get<WitnessAbove>(*a).certified_gap};
    auto b = trick_one(f, tail, beta, twice, budget);
    if (b && std::holds_alternative<WitnessAbove>(*b)) {
      hit = {start + std::get<WitnessAbove>(*b).n - 1, std::get<WitnessAbove>(*b).certified_gap};
    }
    if (far.evidence.empty() || hit.n > far.evidence.back().n) far.evidence.push_back(hit);
  }

  BinarySeq sigma = BinarySeq::from_predicate([=, &budget](std::size_t j) {
    if (j <= tail_below->size()) return bool((*tail_below)[j - 1]);
    if (j > 62) throw EvaluationExhausted(budget.exhausted("trick_two: tail index overflow"));
    auto a = trick_one(f, xs.tail(std::size_t{1} << (j - 1)), half, beta, budget);
    if (!a) throw EvaluationExhausted(a.diagnostics());
    return std::holds_alternative<AllBelow>(*a);
  });

  Verdict v;
  try {
    v = oracle.decide(sigma);
    if (v.kind == Verdict::Kind::FirstOneAt && (v.index == 0 || !sigma(v.index))) {
      return budget.exhausted("trick_two: oracle verdict " + v.str() + " does not match the tail tests");
    }
  } catch (const EvaluationExhausted& e) {
    return e.diagnostics();
  }
  switch (v.kind) {
    case Verdict::Kind::FirstOneAt:
      return TrickTwoResult{EventuallyBelow{std::size_t{1} << (v.index - 1)}};
    case Verdict::Kind::AllZero:
      far.certified_gap = far.evidence.empty() ? Rational(0) : far.evidence.front().certified_gap;
      for (const auto& e : far.evidence) far.certified_gap = min(far.certified_gap, e.certified_gap);
      return TrickTwoResult{std::move(far)};
    case Verdict::Kind::Unknown:
      break;
  }
  return budget.exhausted("trick_two: oracle undecided (" + v.str() + ")");
}

}  // namespace dichot
