#include "dichot/dichotomies.hpp"

#include <atomic>
#include <memory>

namespace dichot {

CoveringDecision sound_covering(const ExactReal& a, const ExactReal& b) {
  return [a, b](const ExactReal& z) {
    const auto& zq = z.exact_value();
    if (zq && b.exact_value() && *zq <= *b.exact_value()) return CoverPart::LowerSet;
    if (zq && a.exact_value() && *zq > *a.exact_value()) return CoverPart::UpperSet;
    for (int p = 1;; ++p) {
      if (p > precision_limit()) throw PrecisionLimitExceeded("sound_covering: query not separable from both ends");
      if ((z.approx(p) - a.approx(p)).lo() > 0) return CoverPart::UpperSet;
      if ((b.approx(p) - z.approx(p)).lo() >= 0) return CoverPart::LowerSet;
    }
  };
}

LineDecomposition decompose_line(const CoveringDecision& d, const ExactReal& a, const ExactReal& b) {
  const ExactReal diff = b - a;
  // z in (a, inf) gives 2b - a > a, so b > a; z in (-inf, b] gives b <= a.
  if (d(b + diff) == CoverPart::LowerSet) return AEqualsB{};
  for (int p = 1;; ++p) {
    if (p > precision_limit()) throw PrecisionLimitExceeded("decompose_line: b - a not separated from 0");
    const RatInterval I = diff.approx(p);
    if (I.lo() > 0) return ALessB{Rational(I.lo() / 2)};
  }
}

LocatedSet singleton_set(const Rational& c) {
  LocatedSet q;
  q.dist = [c](const ExactReal& x, int p) { return abs(x.approx(p) - RatInterval(c)).mid(); };
  q.near_point = [c](const ExactReal&, int) { return ExactReal(c); };
  return q;
}

LocatedSet interval_set(const Rational& lo, const Rational& hi) {
  const ExactReal l(lo), h(hi);
  LocatedSet q;
  q.dist = [l, h](const ExactReal& x, int p) { return max(max(l - x, x - h), ExactReal(0)).approx(p).mid(); };
  q.near_point = [l, h](const ExactReal& x, int) { return max(l, min(x, h)); };
  return q;
}

LocatedSet null_sequence_set() {
  // Points 2^-n with n > p + 3 are within 2^-(p+3) of 0, so |x| stands in for all of them.
  auto scan = [](const ExactReal& x, int p) {
    const Rational X = x.approx(p + 2).mid();
    Rational best = abs(X);
    int arg = p + 3;
    for (int n = 1; n <= p + 3; ++n) {
      const Rational d = abs(Rational(X - pow2(-n)));
      if (d < best) best = d, arg = n;
    }
    return std::make_pair(best, arg);
  };
  LocatedSet q;
  q.dist = [scan](const ExactReal& x, int p) { return scan(x, std::max(p, 0)).first; };
  q.near_point = [scan](const ExactReal& x, int p) { return ExactReal(pow2(-scan(x, std::max(p, 0)).second)); };
  return q;
}

SeparationOracle apartness_probe(const ExactReal& x, int probe) {
  return [x, probe](const ExactReal& z) -> Separation {
    for (int p = 1; p <= probe; ++p) {
      const RatInterval d = abs(z.approx(p) - x.approx(p));
      if (d.lo() > 0) return ApartFromX{Rational(d.lo() / 2)};
    }
    return NotInQ{};
  };
}

Outcome<DistanceDecision> located_distance(const LocatedSet& q, const ExactReal& x, const SeparationOracle& sep,
                                           Budget& budget) {
  auto deepest = std::make_shared<std::atomic<std::size_t>>(0);
  // lambda_n = 0: dist(Q, x) < 2^-n with a near point q_n; lambda_n = 1: dist(Q, x) > 2^-(n+1).
  BinarySeq lambda = BinarySeq::from_predicate([q, x, deepest, &budget](std::size_t n) {
    const int e = static_cast<int>(n);
    if (!budget.charge(e + 3)) throw EvaluationExhausted(budget.exhausted("located_distance: budget exhausted"));
    if (n > *deepest) *deepest = n;
    return q.dist(x, e + 3) >= 3 * pow2(-(e + 2));
  });
  auto term = [q, x, lambda](std::size_t n) -> ExactReal {
    if (!lambda(n)) return x;
    const std::size_t m = *lambda.first_one(n);
    return q.near_point(x, static_cast<int>(m - 1) + 3);
  };
  // lambda_N = 0 puts every later term and the limit within 2^-N of x.
  const ExactReal y = limit(term, [](int p) { return static_cast<std::size_t>(std::max(p + 1, 1)); });

  Separation s;
  try {
    s = sep(y);
  } catch (const EvaluationExhausted& e) {
    return e.diagnostics();
  }
  if (std::holds_alternative<NotInQ>(s)) return DistanceDecision{DistZero{deepest->load()}};

  const Rational gap = std::get<ApartFromX>(s).gap;
  if (gap <= 0) return budget.exhausted("located_distance: separation gap is not positive");
  std::size_t N = 0;
  while (pow2(-static_cast<int>(N)) > gap) ++N;
  try {
    auto m = lambda.first_one(std::max<std::size_t>(N, 1));
    if (!m) return budget.exhausted("located_distance: separation oracle contradicts the distance tests");
    return DistanceDecision{DistPositive{pow2(-static_cast<int>(*m + 1)), *m}};
  } catch (const EvaluationExhausted& e) {
    return e.diagnostics();
  }
}

Outcome<NeatResult> neat_dichotomy(const std::function<ExactReal(std::size_t)>& dense, const Rational& eps,
                                   Budget& budget, NeatOptions options) {
  if (eps <= 0) throw PreconditionFailed(PreconditionFailed::Kind::InvalidArgument, "neat_dichotomy: eps must be positive");
  const Rational half = eps / 2;
  std::vector<ExactReal> centers;
  for (std::size_t i = 1; i <= options.scan; ++i) {
    if (!budget.charge()) return budget.exhausted("neat_dichotomy: budget exhausted after " + std::to_string(i - 1) + " points");
    const ExactReal x = dense(i);
    bool covered = false;
    for (const auto& c : centers) {
      if (split(abs(x - c), half, eps) == SplitResult::IsBelow) {
        covered = true;
        break;
      }
    }
    if (covered) continue;
    centers.push_back(x);
    if (centers.size() >= options.max_centers) return NeatResult{SeparatedSeq{std::move(centers)}};
  }
  return NeatResult{FiniteApprox{std::move(centers), options.scan}};
}

std::function<ExactReal(std::size_t)> dyadic_enumeration() {
  return [](std::size_t i) -> ExactReal {
    if (i <= 1) return ExactReal(0);
    if (i == 2) return ExactReal(1);
    std::size_t n = i - 3;  // position among the odd multiples, level by level
    int k = 1;
    while (n >= (std::size_t{1} << (k - 1))) n -= std::size_t{1} << (k - 1), ++k;
    return ExactReal(Rational(Rational(static_cast<long>(2 * n + 1)) * pow2(-k)));
  };
}

std::string NeatViolation::str() const {
  switch (kind) {
    case Kind::Gap: return "gap: s=" + to_string(s) + " in S', t=" + to_string(t) + " in T', distance " + to_string(abs(Rational(s - t)));
    case Kind::CoverT: return "cover: " + to_string(s) + " in neither T nor T'";
    case Kind::CoverS: return "cover: " + to_string(s) + " in neither S nor S'";
  }
  return "?";
}

NeatReport validate_neat_covering(const NeatCovering& c, const std::vector<Rational>& samples) {
  NeatReport r;
  r.samples = samples.size();
  std::vector<Rational> in_s, in_t;
  for (const auto& x : samples) {
    if (!c.T(x) && !c.T_prime(x)) r.violations.push_back({NeatViolation::Kind::CoverT, x, x});
    if (!c.S(x) && !c.S_prime(x)) r.violations.push_back({NeatViolation::Kind::CoverS, x, x});
    if (c.S_prime(x)) in_s.push_back(x);
    if (c.T_prime(x)) in_t.push_back(x);
  }
  for (const auto& s : in_s) {
    for (const auto& t : in_t) {
      if (abs(Rational(s - t)) <= c.eps) r.violations.push_back({NeatViolation::Kind::Gap, s, t});
    }
  }
  return r;
}

}  // namespace dichot
