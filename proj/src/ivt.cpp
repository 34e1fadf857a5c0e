#include "dichot/ivt.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>

namespace dichot {

namespace {

using Probe = std::function<Outcome<RatInterval>(const Rational&, int)>;

struct Classified {
  Sign3 sign;
  RatInterval value;
};

Outcome<Classified> probe_classify(const Probe& probe, const Rational& q, const Thresholds& th) {
  const int p = classify_precision(th.small, th.sign);
  auto v = probe(q, p);
  if (!v) return v.diagnostics();
  return Classified{classify_interval(*v, th.small, th.sign), *v};
}

Sign3 flip(Sign3 s) {
  if (s == Sign3::Positive) return Sign3::Negative;
  if (s == Sign3::Negative) return Sign3::Positive;
  return s;
}

// State of the halving after it stopped, oriented so f(a) < 0 < f(b).
struct Halving {
  bool root = false;
  Rational root_point;
  Rational root_bound;
  bool flipped = false;
  std::vector<Rational> as, bs;
  std::vector<RatInterval> fas, fbs;
};

// Halves [lo, hi] `depth` times, keeping f(a_n) < -sign < sign < f(b_n) until
// a point is certified small.
Outcome<Halving> halve(const Probe& probe, const Rational& lo, const Rational& hi, const Thresholds& th,
                       std::size_t depth, BisectionTrace* trace) {
  Halving h;
  auto flo = probe_classify(probe, lo, th);
  if (!flo) return flo.diagnostics();
  if (flo->sign == Sign3::Small) {
    h.root = true, h.root_point = lo, h.root_bound = th.small;
    return h;
  }
  auto fhi = probe_classify(probe, hi, th);
  if (!fhi) return fhi.diagnostics();
  if (fhi->sign == Sign3::Small) {
    h.root = true, h.root_point = hi, h.root_bound = th.small;
    return h;
  }
  if (flo->sign == fhi->sign) {
    throw PreconditionFailed(PreconditionFailed::Kind::SameSignEndpoints,
                             "endpoint values are certified to have the same sign");
  }
  h.flipped = flo->sign == Sign3::Positive;
  auto orient = [&](const RatInterval& v) { return h.flipped ? -v : v; };

  Rational a = lo, b = hi;
  RatInterval fa = orient(flo->value), fb = orient(fhi->value);
  if (trace) {
    trace->steps.clear();
    trace->sign_threshold = th.sign;
    trace->flipped = h.flipped;
  }
  auto record = [&](std::size_t n, bool lambda) {
    h.as.push_back(a), h.bs.push_back(b), h.fas.push_back(fa), h.fbs.push_back(fb);
    if (trace) trace->steps.push_back({n, a, b, fa, fb, lambda});
  };
  record(0, false);
  for (std::size_t n = 1; n <= depth; ++n) {
    const Rational m = (a + b) / 2;
    auto fm = probe_classify(probe, m, th);
    if (!fm) {
      Exhausted e = fm.diagnostics();
      e.last_candidate = RatInterval(a, b);
      return e;
    }
    const Sign3 s = h.flipped ? flip(fm->sign) : fm->sign;
    if (s == Sign3::Small) {
      a = b = m;
      fa = fb = orient(fm->value);
      if (trace) trace->steps.push_back({n, a, b, fa, fb, true});
      h.root = true, h.root_point = m, h.root_bound = th.small;
      return h;
    }
    if (s == Sign3::Positive) {
      b = m, fb = orient(fm->value);
    } else {
      a = m, fa = orient(fm->value);
    }
    record(n, false);
  }
  return h;
}

// Smallest k >= 0 with w <= 2^k.
int width_bits(const Rational& w) {
  int k = 0;
  while (pow2(k) < w) ++k;
  return k;
}

Probe probe_of(const RealFn& f, Budget& budget) {
  return [&f, &budget](const Rational& q, int p) { return f.at(q, p, budget); };
}

}  // namespace

Outcome<std::pair<Sign3, RatInterval>> classify_at(const RealFn& f, const Rational& q, const Thresholds& th,
                                                   Budget& budget) {
  auto c = probe_classify(probe_of(f, budget), q, th);
  if (!c) return c.diagnostics();
  return std::make_pair(c->sign, c->value);
}

Outcome<RootResult> approx_root_on(const RealFn& f, const Rational& lo, const Rational& hi,
                                   const Thresholds& midpoint, const Thresholds& final_test, Budget& budget,
                                   BisectionTrace* trace) {
  if (!(lo < hi)) throw PreconditionFailed(PreconditionFailed::Kind::InvalidArgument, "approx_root: lo >= hi");
  const std::size_t depth = static_cast<std::size_t>(std::max(budget.max_precision(), 1));
  const Probe probe = probe_of(f, budget);
  auto halving = halve(probe, lo, hi, midpoint, depth, trace);
  if (!halving) return halving.diagnostics();
  const Halving& h = *halving;
  if (h.root) return RootResult{Root{ExactReal(h.root_point), h.root_point, h.root_bound}};

  // Final three-way test at the point the halving converged to.
  const Rational a = h.as.back(), b = h.bs.back();
  const Rational z = (a + b) / 2;
  auto fz = probe_classify(probe, z, final_test);
  if (!fz) {
    Exhausted e = fz.diagnostics();
    e.last_candidate = RatInterval(a, b);
    return e;
  }
  if (fz->sign == Sign3::Small) return RootResult{Root{ExactReal(z), z, final_test.small}};

  const bool z_high = (h.flipped ? flip(fz->sign) : fz->sign) == Sign3::Positive;
  // f(z) on one side of zero; the halving endpoints on the other side form the approach.
  const auto& pts = z_high ? h.as : h.bs;
  const auto& vals = z_high ? h.fas : h.fbs;
  const RatInterval fz_oriented = h.flipped ? -fz->value : fz->value;

  DiscontinuityEvidence ev;
  ev.z = ExactReal(z);
  ev.z_point = z;
  ev.side = z_high ? ApproachSide::FromLeft : ApproachSide::FromRight;
  ev.resolution = (b - a) / 2;
  bool first = true;
  for (std::size_t n = 1; n < pts.size(); ++n) {
    RatInterval prod = fz_oriented * vals[n];
    if (first || prod.hi() > ev.gap_certificate) ev.gap_certificate = prod.hi();
    first = false;
    ev.approach_points.push_back(pts[n]);
    ev.products.push_back(prod);
  }
  if (first) {
    // depth 0: only the initial endpoints were tested.
    RatInterval prod = fz_oriented * vals[0];
    ev.gap_certificate = prod.hi();
    ev.approach_points.push_back(pts[0]);
    ev.products.push_back(prod);
  }
  const auto points = std::make_shared<const std::vector<Rational>>(ev.approach_points);
  const std::size_t last = points->size();
  const int shift = width_bits(hi - lo);
  ev.approach.term = [points, last](std::size_t n) {
    const std::size_t i = n == 0 ? 0 : std::min(n, last) - 1;
    return ExactReal((*points)[i]);
  };
  ev.approach.limit_point = ExactReal(points->back());
  ev.approach.modulus = [last, shift](int p) {
    const long m = static_cast<long>(p) + shift;
    return static_cast<std::size_t>(std::clamp<long>(m, 1, static_cast<long>(last)));
  };
  return RootResult{Stuck{std::move(ev)}};
}

Outcome<RootResult> approx_root(const RealFn& f, const Rational& eps, Budget& budget, BisectionTrace* trace) {
  if (eps <= 0) throw PreconditionFailed(PreconditionFailed::Kind::InvalidArgument, "approx_root: eps must be positive");
  // Midpoints keep the halving invariant f(a) < -eps/2, f(b) > eps/2; the final
  // test is the sign_or_small split (eps/2 vs eps/4).
  return approx_root_on(f, 0, 1, Thresholds{eps, Rational(eps / 2)}, Thresholds{Rational(eps / 2), Rational(eps / 4)},
                        budget, trace);
}

RationalRootResult approx_root_rational(const RationalFn& f, const Rational& eps, std::size_t depth,
                                        BisectionTrace* trace) {
  if (eps <= 0) throw PreconditionFailed(PreconditionFailed::Kind::InvalidArgument, "eps must be positive");
  const Probe probe = [&f](const Rational& q, int p) -> Outcome<RatInterval> { return f.eval_q(q).approx(p); };
  auto halving = halve(probe, 0, 1, Thresholds{eps, Rational(eps / 2)}, depth, trace);
  const Halving& h = halving.value();
  if (h.root) return RootAtRational{h.root_point, h.root_bound};
  const Rational a = h.as.back(), b = h.bs.back();
  return Candidate{ExactReal(Rational((a + b) / 2)), a, b, h.fas.back(), h.fbs.back()};
}

std::function<Rational(std::size_t)> unit_rationals() {
  struct Cache {
    std::mutex mu;
    std::vector<Rational> items{Rational(0), Rational(1)};
    long den = 1;
  };
  auto cache = std::make_shared<Cache>();
  return [cache](std::size_t n) {
    std::lock_guard lock(cache->mu);
    const std::size_t i = n == 0 ? 0 : n - 1;
    while (cache->items.size() <= i) {
      ++cache->den;
      for (long num = 1; num < cache->den; ++num) {
        if (std::gcd(num, cache->den) == 1) cache->items.push_back(make_rational(num, cache->den));
      }
    }
    return cache->items[i];
  };
}

Outcome<Cor7Result> cor7_decide(const RealFn& f, const Rational& eps, const OmniscienceOracle& oracle,
                                const std::function<Rational(std::size_t)>& enumeration, Budget& budget,
                                Cor7Options options) {
  try {
    auto r = approx_root(f, eps, budget);
    if (!r) return r.diagnostics();
    if (const auto* root = std::get_if<Root>(&*r)) {
      return Cor7Result{RootBelowEps{root->z, root->point, root->value_bound}};
    }
  } catch (const PreconditionFailed& e) {
    if (options.require_sign_change || e.kind() != PreconditionFailed::Kind::SameSignEndpoints) throw;
  }

  // The halving found evidence of a jump (or was skipped): ask the oracle about
  // lambda_n = 1 iff some q_k, k <= n, has |f(q_k)| < eps.
  const Thresholds th{eps, Rational(eps / 2)};
  BinarySeq lambda = BinarySeq::from_predicate([&](std::size_t k) {
    auto c = classify_at(f, enumeration(k), th, budget);
    if (!c) throw EvaluationExhausted(c.diagnostics());
    return c->first == Sign3::Small;
  });
  Verdict v;
  try {
    v = oracle.decide(lambda);
  } catch (const EvaluationExhausted& e) {
    return e.diagnostics();
  }
  switch (v.kind) {
    case Verdict::Kind::AllZero:
      return Cor7Result{AllRationalsAtLeast{Rational(eps / 2)}};
    case Verdict::Kind::FirstOneAt: {
      const Rational q = enumeration(v.index);
      return Cor7Result{RootBelowEps{ExactReal(q), q, eps}};
    }
    case Verdict::Kind::Unknown:
      break;
  }
  return budget.exhausted("oracle could not decide the rational test sequence (" + v.str() + ")");
}

}  // namespace dichot
