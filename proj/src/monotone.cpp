#include "dichot/monotone.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>

namespace dichot {

namespace {

[[noreturn]] void not_monotone(const std::string& where) {
  throw PreconditionFailed(PreconditionFailed::Kind::MonotonicityViolated, where + ": sampled values contradict monotonicity");
}

// Bracket [A, B] around sup_{t < x} g(t) for increasing g, x in (0, 1].
// The sequence of brackets depends only on g and x, so refining to a finer
// precision continues the same search and the results nest.
struct LeftBracket {
  RealFn g;
  Rational x;
  std::optional<Rational> A, B;
  std::mutex mu;

  Outcome<RatInterval> refine(int p, Budget& budget) {
    std::lock_guard lock(mu);
    if (!A) {
      auto g0 = g.at(0, 16, budget);
      if (!g0) return g0;
      auto gx = g.at(x, 16, budget);
      if (!gx) return gx;
      if (g0->lo() > gx->hi()) not_monotone("one_sided_limit");
      A = g0->lo(), B = gx->hi();
    }
    const Rational target = pow2(-p);
    Rational& a = *A;
    Rational& b = *B;
    while (b - a > target) {
      const Rational y = (a + b) / 2;
      const Rational e = (b - a) / 8;
      const RealFn h = shifted(g, y);
      const Thresholds th{e, Rational(e / 2)};
      auto fail = [&](const Exhausted& d) {
        Exhausted out = d;
        out.last_candidate = RatInterval(a, b);
        out.reason = "one_sided_limit: " + d.reason;
        return out;
      };
      auto c0 = classify_at(h, 0, th, budget);
      if (!c0) return fail(c0.diagnostics());
      if (c0->first == Sign3::Positive) {  // g(0) > y
        a = y;
        continue;
      }
      if (c0->first == Sign3::Small) {  // g(0) > y - e
        a = y - e;
        continue;
      }
      auto cx = classify_at(h, x, th, budget);
      if (!cx) return fail(cx.diagnostics());
      if (cx->first == Sign3::Negative) {  // limit <= g(x) < y
        b = y;
        continue;
      }
      if (cx->first == Sign3::Small) {
        b = y + e;
        continue;
      }
      BisectionTrace trace;
      auto r = approx_root_on(h, 0, x, th, th, budget, &trace);
      if (!r) return fail(r.diagnostics());
      if (std::holds_alternative<Root>(*r)) {
        // g(t) > y - e at some t < x.
        a = y - e;
      } else if (trace.steps.back().b < x) {
        a = y;  // g(b_D) > y with b_D < x
      } else {
        b = y;  // no crossing left of x down to the bisection resolution
      }
      if (a > b) not_monotone("one_sided_limit");
    }
    return RatInterval(a, b);
  }
};

Outcome<ExactReal> left_limit_increasing(const RealFn& g, const Rational& x, int p, Budget& budget) {
  if (x == 0) {
    auto v = g.at(0, p, budget);
    if (!v) return v.diagnostics();
    const Budget limits(budget.max_queries(), budget.max_precision());
    return ExactReal([g, limits](int q) {
      Budget local = limits;
      auto r = g.at(0, q, local);
      if (!r) throw EvaluationExhausted(r.diagnostics());
      return *r;
    });
  }
  auto state = std::make_shared<LeftBracket>();
  state->g = g;
  state->x = x;
  auto first = state->refine(std::max(p, 0), budget);
  if (!first) return first.diagnostics();
  const Budget limits(budget.max_queries(), budget.max_precision());
  return ExactReal([state, limits](int q) {
    Budget local = limits;
    auto r = state->refine(std::max(q, 0), local);
    if (!r) throw EvaluationExhausted(r.diagnostics());
    return *r;
  });
}

}  // namespace

Outcome<ExactReal> one_sided_limit(const MonotoneFn& f, const Rational& x, Side side, int p, Budget& budget) {
  if (x < 0 || x > 1) throw PreconditionFailed(PreconditionFailed::Kind::InvalidArgument, "one_sided_limit: x outside [0, 1]");
  const RealFn g = f.increasing();
  const bool negate = f.direction == Direction::Decreasing;
  Outcome<ExactReal> lim = side == Side::Left ? left_limit_increasing(g, x, p, budget)
                                              // t -> -g(1 - t) is increasing; its left limit at 1 - x is minus ours
                                              : left_limit_increasing(negated(reflected(g)), Rational(1 - x), p, budget);
  if (!lim) return lim;
  const bool flip = negate != (side == Side::Right);
  return flip ? -*lim : *lim;
}

Outcome<ExactReal> span_one_sided_limit(const SpanFn& f, const Rational& x, Side side, int p, Budget& budget) {
  ExactReal sum;
  const int q = p + 2 + static_cast<int>(f.terms.size());
  for (const auto& t : f.terms) {
    auto lim = one_sided_limit(t.part, x, side, q, budget);
    if (!lim) return lim;
    sum = sum + t.coefficient * *lim;
  }
  try {
    (void)sum.approx(p);
  } catch (const EvaluationExhausted& e) {
    return e.diagnostics();
  }
  return sum;
}

Outcome<StepPartition> eps_steps(const MonotoneFn& f, const Rational& eps, Budget& budget) {
  if (eps <= 0) throw PreconditionFailed(PreconditionFailed::Kind::InvalidArgument, "eps_steps: eps must be positive");
  const RealFn g = f.increasing();
  const int p0 = precision_for(Rational(eps / 64));
  auto g0 = g.at(0, p0, budget);
  if (!g0) return g0.diagnostics();
  auto g1 = g.at(1, p0, budget);
  if (!g1) return g1.diagnostics();
  if (g0->lo() > g1->hi()) not_monotone("eps_steps");

  const Rational F0 = g0->lo();
  const Rational delta = g1->hi() - F0 + eps / 4;
  // Least n with delta / n < eps / 2.
  const long n = floor_long(Rational(2 * delta / eps)) + 1;
  const Thresholds th{Rational(eps / 4), Rational(eps / 5)};

  std::map<Rational, StepPoint> points;
  points[Rational(0)] = StepPoint{0, StepPoint::Flag::NearLevel, g0->mid(), pow2(-p0), 0, 0};
  points[Rational(1)] = StepPoint{1, StepPoint::Flag::NearLevel, g1->mid(), pow2(-p0), 1, 1};

  StepPartition out;
  out.eps = eps;
  for (long i = 0; i <= n; ++i) {
    const Rational y = F0 + delta * i / n;
    out.levels.push_back(y);
    const RealFn h = shifted(g, y);
    auto c0 = classify_at(h, 0, th, budget);
    if (!c0) return c0.diagnostics();
    if (c0->first == Sign3::Positive) continue;
    if (c0->first == Sign3::Small) {
      points[Rational(0)] = StepPoint{0, StepPoint::Flag::NearLevel, y, th.small, 0, 0};
      continue;
    }
    auto c1 = classify_at(h, 1, th, budget);
    if (!c1) return c1.diagnostics();
    if (c1->first == Sign3::Negative) continue;
    if (c1->first == Sign3::Small) {
      points[Rational(1)] = StepPoint{1, StepPoint::Flag::NearLevel, y, th.small, 1, 1};
      continue;
    }
    BisectionTrace trace;
    auto r = approx_root_on(h, 0, 1, th, th, budget, &trace);
    if (!r) return r.diagnostics();
    if (const auto* root = std::get_if<Root>(&*r)) {
      auto it = points.find(root->point);
      if (it == points.end() || it->second.flag != StepPoint::Flag::StepCandidate) {
        points[root->point] = StepPoint{root->point, StepPoint::Flag::NearLevel, y, root->value_bound,
                                        root->point, root->point};
      }
    } else {
      const auto& ev = std::get<Stuck>(*r).evidence;
      const auto& last = trace.steps.back();
      points[ev.z_point] = StepPoint{ev.z_point, StepPoint::Flag::StepCandidate, y, th.sign, last.a, last.b};
    }
  }
  for (auto& [x, pt] : points) out.points.push_back(pt);

  std::vector<Rational> xs;
  for (const auto& pt : out.points) xs.push_back(pt.x);
  if (!sampled_monotone(MonotoneFn{g, Direction::Increasing}, xs, p0, budget)) not_monotone("eps_steps");
  return out;
}

// ---- discontinuity streams ----

struct DiscontinuityStream::State {
  RealFn g;
  Budget budget;
  std::mutex mu;
  std::vector<DiscontinuityEntry> entries;
  std::optional<Exhausted> exhausted;
  std::vector<DiscontinuityPoint> found;
  bool have_range = false;
  Rational F0, F1;
  int level = 1;
  long index = 0;     // next grid index at this level
  long n_levels = 0;  // grid size at this level (indices 0..n_levels)

  void start_level() {
    const Rational eps = pow2(-level);
    const Rational delta = F1 - F0 + eps / 4;
    n_levels = floor_long(Rational(2 * delta / eps)) + 1;
    index = 0;
  }

  Outcome<DiscontinuityEntry> compute_next() {
    if (!have_range) {
      auto g0 = g.at(0, 16, budget);
      if (!g0) return g0.diagnostics();
      auto g1 = g.at(1, 16, budget);
      if (!g1) return g1.diagnostics();
      if (g0->lo() > g1->hi()) not_monotone("enumerate_discontinuities");
      F0 = g0->lo(), F1 = g1->hi();
      have_range = true;
      start_level();
    }
    if (index > n_levels) {
      ++level;
      start_level();
    }
    const Rational eps = pow2(-level);
    const Rational delta = F1 - F0 + eps / 4;
    const Rational y = F0 + delta * index / n_levels;
    ++index;

    const RealFn h = shifted(g, y);
    const Thresholds th{Rational(eps / 4), Rational(eps / 5)};
    auto c0 = classify_at(h, 0, th, budget);
    if (!c0) return c0.diagnostics();
    if (c0->first != Sign3::Negative) return DiscontinuityEntry{Star{}};
    auto c1 = classify_at(h, 1, th, budget);
    if (!c1) return c1.diagnostics();
    if (c1->first != Sign3::Positive) return DiscontinuityEntry{Star{}};
    BisectionTrace trace;
    auto r = approx_root_on(h, 0, 1, th, th, budget, &trace);
    if (!r) return r.diagnostics();
    if (std::holds_alternative<Root>(*r)) return DiscontinuityEntry{Star{}};

    const auto& ev = std::get<Stuck>(*r).evidence;
    const Rational a = trace.steps.back().a, b = trace.steps.back().b;
    const Rational half = eps / 2;
    const int q = split_precision(half, eps) + 1;
    auto ga = g.at(a, q, budget);
    if (!ga) return ga.diagnostics();
    auto gb = g.at(b, q, budget);
    if (!gb) return gb.diagnostics();
    const RatInterval rise = *gb - *ga;
    if (rise.hi() < 0) not_monotone("enumerate_discontinuities");
    if (split_interval(rise, half, eps) == SplitResult::IsBelow) return DiscontinuityEntry{Star{}};
    const RatInterval bracket(a, b);
    for (const auto& pt : found) {
      if (RatInterval(pt.bracket_lo, pt.bracket_hi).intersects(bracket)) return DiscontinuityEntry{Star{}};
    }
    DiscontinuityPoint pt{ExactReal(ev.z_point), ev.z_point, a, b, half, level};
    found.push_back(pt);
    return DiscontinuityEntry{pt};
  }
};

DiscontinuityStream::DiscontinuityStream(MonotoneFn f, Budget budget) : state_(std::make_shared<State>()) {
  state_->g = f.increasing();
  state_->budget = budget;
}

const Budget& DiscontinuityStream::budget() const { return state_->budget; }

Outcome<DiscontinuityEntry> DiscontinuityStream::at(std::size_t n) {
  if (n == 0) throw std::invalid_argument("DiscontinuityStream: entries are indexed from 1");
  std::lock_guard lock(state_->mu);
  while (state_->entries.size() < n) {
    if (state_->exhausted) return *state_->exhausted;
    auto e = state_->compute_next();
    if (!e) {
      state_->exhausted = e.diagnostics();
      return e;
    }
    state_->entries.push_back(*e);
  }
  return state_->entries[n - 1];
}

Outcome<std::vector<DiscontinuityEntry>> DiscontinuityStream::prefix(std::size_t count) {
  std::vector<DiscontinuityEntry> out;
  for (std::size_t n = 1; n <= count; ++n) {
    auto e = at(n);
    if (!e) return e.diagnostics();
    out.push_back(*e);
  }
  return out;
}

Outcome<std::vector<DiscontinuityEntry>> enumerate_discontinuities(const MonotoneFn& f, std::size_t count,
                                                                   Budget& budget) {
  DiscontinuityStream stream(f, budget);
  auto out = stream.prefix(count);
  budget = stream.budget();
  return out;
}

Outcome<std::vector<DiscontinuityEntry>> span_discontinuities(const SpanFn& f, std::size_t count, Budget& budget) {
  const std::size_t terms = f.terms.size();
  if (terms == 0) return std::vector<DiscontinuityEntry>(count, Star{});

  std::vector<DiscontinuityStream> streams;
  std::vector<BinarySeq> nonzero;
  for (const auto& t : f.terms) {
    streams.emplace_back(t.part, budget);
    const ExactReal k = abs(t.coefficient);
    // lambda_n = 1 once |k| > 2^-(n+1) is certified at some m <= n.
    nonzero.push_back(BinarySeq::from_predicate([k](std::size_t m) {
      const int e = static_cast<int>(m);
      return split(k, pow2(-(e + 1)), pow2(-e)) == SplitResult::IsAbove;
    }));
  }
  const RealFn sum = f.as_real_fn();

  // Candidate c: entry (c-1)/T + 1 of term (c-1) % T, or Star while that
  // term's coefficient is not yet known to be nonzero.
  auto candidate = [&](std::size_t c) -> Outcome<DiscontinuityEntry> {
    const std::size_t term = (c - 1) % terms;
    const std::size_t n = (c - 1) / terms + 1;
    if (!nonzero[term](n)) return DiscontinuityEntry{Star{}};
    return streams[term].at(n);
  };

  std::vector<DiscontinuityEntry> out;
  std::vector<DiscontinuityPoint> found;
  // Cantor walk over (candidate c, threshold l).
  for (std::size_t d = 1; out.size() < count; ++d) {
    for (std::size_t c = 1; c <= d && out.size() < count; ++c) {
      const std::size_t l = d - c + 1;
      auto cand = candidate(c);
      if (!cand) return cand.diagnostics();
      const auto* pt = std::get_if<DiscontinuityPoint>(&*cand);
      if (!pt) {
        out.push_back(Star{});
        continue;
      }
      const RatInterval bracket(pt->bracket_lo, pt->bracket_hi);
      bool seen = false;
      for (const auto& f2 : found) seen = seen || RatInterval(f2.bracket_lo, f2.bracket_hi).intersects(bracket);
      if (seen) {
        out.push_back(Star{});
        continue;
      }
      const Rational lo = make_rational(1, 2 * static_cast<long>(l));
      const Rational hi = make_rational(1, static_cast<long>(l));
      const int q = split_precision(lo, hi) + 1;
      auto fa = sum.at(pt->bracket_lo, q, budget);
      if (!fa) return fa.diagnostics();
      auto fb = sum.at(pt->bracket_hi, q, budget);
      if (!fb) return fb.diagnostics();
      if (split_interval(abs(*fb - *fa), lo, hi) == SplitResult::IsBelow) {
        out.push_back(Star{});
        continue;
      }
      DiscontinuityPoint refined = *pt;
      refined.gap_lower = lo;
      found.push_back(refined);
      out.push_back(refined);
    }
  }
  return out;
}

std::size_t count_points(const std::vector<DiscontinuityEntry>& entries) {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const DiscontinuityEntry& e) {
    return std::holds_alternative<DiscontinuityPoint>(e);
  }));
}

}  // namespace dichot
