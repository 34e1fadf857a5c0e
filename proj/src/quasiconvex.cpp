#include "dichot/quasiconvex.hpp"

#include <algorithm>
#include <queue>

namespace dichot {

namespace {

RatInterval inf_enclosure(const InfOracle& inf, const RatInterval& I, int q) {
  const Rational v = inf(I, q);
  return widen(RatInterval(v), pow2(-q));
}

// Enclosure of inf over I narrow enough to split between a and b.
Outcome<SplitResult> split_inf(const InfOracle& inf, const RatInterval& I, const Rational& a, const Rational& b,
                               Budget& budget, RatInterval* out = nullptr) {
  const int q = split_precision(a, b) + 1;
  if (!budget.charge(q)) return budget.exhausted("inf_dichotomy: oracle precision beyond budget");
  const RatInterval e = inf_enclosure(inf, I, q);
  if (out) *out = e;
  return split_interval(e, a, b);
}

// Refines the oracle until pred(enclosure) holds.
template <typename Pred>
Outcome<RatInterval> refine_inf(const InfOracle& inf, const RatInterval& I, int q, Budget& budget, Pred pred) {
  for (;; ++q) {
    if (!budget.charge(q)) return budget.exhausted("inf_dichotomy: oracle refinement beyond budget");
    const RatInterval e = inf_enclosure(inf, I, q);
    if (pred(e)) return e;
  }
}

// f(x) with 0 < lo and hi < 2 lo.
Outcome<RatInterval> positive_value(const RealFn& f, const Rational& x, int q, Budget& budget) {
  for (;; q += 2) {
    if (!budget.allows_precision(q)) return budget.exhausted("inf_dichotomy: f(" + to_string(x) + ") not separated from 0");
    auto v = f.at(x, q, budget);
    if (!v) return v;
    if (v->hi() <= 0) {
      throw PreconditionFailed(PreconditionFailed::Kind::NotPositive, "f(" + to_string(x) + ") <= 0 certified");
    }
    if (v->lo() > 0 && v->hi() < 2 * v->lo()) return v;
  }
}

}  // namespace

Outcome<InfResult> inf_dichotomy(const RealFn& f, const InfOracle& inf, Budget& budget, InfTrace* trace,
                                 bool quasi_convex_trusted) {
  const std::size_t depth = static_cast<std::size_t>(std::max(budget.max_precision() - 8, 1));
  InfTrace local;
  InfTrace& tr = trace ? *trace : local;
  tr.steps.clear();
  tr.alpha_tests.clear();

  try {
    Rational l = 0, r = 1;
    std::vector<Rational> mids;
    for (std::size_t n = 0; n < depth; ++n) {
      const Rational m = (l + r) / 2;
      mids.push_back(m);
      InfStep step{n, l, r, m, {}, {}, {}, false, '?'};
      auto fm = positive_value(f, m, static_cast<int>(n) + 4, budget);
      if (!fm) return fm.diagnostics();
      step.fm = *fm;
      const Rational fm_lo = fm->lo(), fm_hi = fm->hi();
      const RatInterval left(l, m), right(m, r);

      // inf f(I_l) > f(m)/2  or  inf f(I_l) < f(m).
      auto sl = split_inf(inf, left, Rational(fm_hi / 2), fm_lo, budget, &step.inf_left);
      if (!sl) return sl.diagnostics();
      if (*sl == SplitResult::IsAbove) {
        const Rational a = fm_hi / 2;
        auto el = refine_inf(inf, left, split_precision(a, fm_lo) + 1, budget,
                             [&](const RatInterval& e) { return e.lo() > a; });
        if (!el) return el.diagnostics();
        step.inf_left = *el;
        // inf f(I_r) > f(m)/2  or  inf f(I_r) < inf f(I_l).
        auto sr = split_inf(inf, right, a, el->lo(), budget, &step.inf_right);
        if (!sr) return sr.diagnostics();
        if (*sr == SplitResult::IsAbove) {
          step.lambda = true;
          step.branch = 'P';
          tr.steps.push_back(step);
          return InfResult{InfPositive{Rational(fm_lo / 2), ExactReal(m), m, n + 1}};
        }
        step.branch = 'R';
        l = m;
      } else {
        auto el = refine_inf(inf, left, split_precision(Rational(fm_hi / 2), fm_lo) + 1, budget,
                             [&](const RatInterval& e) { return e.hi() < fm_lo; });
        if (!el) return el.diagnostics();
        step.inf_left = *el;
        // inf f(I_r) > inf f(I_l)  or  inf f(I_r) < f(m); the second contradicts quasi-convexity.
        auto sr = split_inf(inf, right, el->hi(), fm_lo, budget, &step.inf_right);
        if (!sr) return sr.diagnostics();
        if (*sr == SplitResult::IsBelow) {
          throw PreconditionFailed(PreconditionFailed::Kind::QuasiConvexityViolated,
                                   "both halves of [" + to_string(l) + ", " + to_string(r) + "] dip below f(" +
                                       to_string(m) + ")");
        }
        step.branch = 'L';
        r = m;
      }
      tr.steps.push_back(step);
    }

    if (!quasi_convex_trusted) {
      std::vector<Triple> triples;
      for (std::size_t i = 0; i + 2 < mids.size() && i < 16; ++i) {
        triples.push_back({mids[i], mids[i + 2], Rational(1, 2)});
      }
      auto rep = quasiconvex_check(f, triples, 16, budget);
      if (!rep) return rep.diagnostics();
      if (!rep->ok()) {
        throw PreconditionFailed(PreconditionFailed::Kind::QuasiConvexityViolated,
                                 "sampled triple violates quasi-convexity");
      }
    }

    // z: left end of the last interval.
    const Rational z = l;
    auto fz = positive_value(f, z, static_cast<int>(depth) / 2 + 4, budget);
    if (!fz) return fz.diagnostics();
    const RatInterval unit(Rational(0), Rational(1));
    // inf > f(z)/4  or  inf < f(z)/2.
    auto sz = split_inf(inf, unit, Rational(fz->lo() / 4), Rational(fz->lo() / 2), budget);
    if (!sz) return sz.diagnostics();
    if (*sz == SplitResult::IsAbove) return InfResult{InfPositive{Rational(fz->lo() / 4), ExactReal(z), z, 0}};

    // Second phase: alpha_n = 1 once inf > 2^-(n+1); otherwise some y_n in J_n has f(y_n) < 2^-n.
    InfZeroEvidence ev;
    ev.z = ExactReal(z);
    ev.z_point = z;
    ev.fz = *fz;
    ev.resolution = r - l;
    for (std::size_t n = 1; n <= depth; ++n) {
      const Rational hi = pow2(-static_cast<int>(n));
      const Rational lo = hi / 2;
      tr.alpha_tests.push_back(hi);
      auto sa = split_inf(inf, unit, lo, hi, budget);
      if (!sa) return sa.diagnostics();
      if (*sa == SplitResult::IsAbove) return InfResult{InfPositive{lo, ExactReal(z), z, 0}};

      std::vector<Rational> candidates(mids.begin() + static_cast<long>(std::min(n, mids.size())), mids.end());
      candidates.push_back(l);
      candidates.push_back(r);
      const Rational jl = n < tr.steps.size() ? tr.steps[n].l : l;
      const Rational jr = n < tr.steps.size() ? tr.steps[n].r : r;
      for (int k = 1; k < 64; k += 2) candidates.push_back(jl + (jr - jl) * k / 64);
      bool found = false;
      for (const auto& c : candidates) {
        auto v = f.at(c, static_cast<int>(n) + 2, budget);
        if (!v) continue;
        if (v->hi() < hi) {
          ev.approach_points.push_back(c);
          ev.approach_values.push_back(*v);
          found = true;
          break;
        }
      }
      if (!found) return budget.exhausted("inf_dichotomy: no point of J_" + std::to_string(n) + " below 2^-" + std::to_string(n));
    }

    const auto pts = std::make_shared<const std::vector<Rational>>(ev.approach_points);
    ev.approach.term = [pts](std::size_t n) {
      const std::size_t i = n == 0 ? 0 : std::min(n, pts->size()) - 1;
      return ExactReal((*pts)[i]);
    };
    ev.approach.limit_point = ev.z;
    const std::size_t last = pts->size();
    ev.approach.modulus = [last](int p) { return static_cast<std::size_t>(std::clamp<long>(p, 1, static_cast<long>(last))); };
    return InfResult{std::move(ev)};
  } catch (const EvaluationExhausted& e) {
    return e.diagnostics();
  }
}

Outcome<QuasiConvexReport> quasiconvex_check(const RealFn& f, const std::vector<Triple>& triples, int p,
                                             Budget& budget) {
  QuasiConvexReport rep;
  for (const auto& t : triples) {
    const Rational w = t.lambda * t.x + (1 - t.lambda) * t.y;
    auto fw = f.at(w, p, budget);
    if (!fw) return fw.diagnostics();
    auto fx = f.at(t.x, p, budget);
    if (!fx) return fx.diagnostics();
    auto fy = f.at(t.y, p, budget);
    if (!fy) return fy.diagnostics();
    ++rep.checked;
    if (fw->lo() > max(fx->hi(), fy->hi())) rep.violations.push_back({t.x, t.y, t.lambda, *fw, *fx, *fy});
  }
  return rep;
}

std::vector<Triple> grid_triples(int n) {
  std::vector<Triple> out;
  for (int i = 0; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (int k = 1; k <= 3; ++k) out.push_back({make_rational(i, n), make_rational(j, n), make_rational(k, 4)});
    }
  }
  return out;
}

Rational spike_value(const Rational& z, const Rational& eps, const Rational& x) {
  return max(Rational(0), Rational(1 - abs(Rational(x - z)) / eps));
}

RealFn spike(const Rational& z, const Rational& eps) {
  if (eps <= 0) throw PreconditionFailed(PreconditionFailed::Kind::InvalidArgument, "spike: eps must be positive");
  const Rational inv = 1 / eps;
  return RealFn([z, inv](const ExactReal& x, int p, Budget& b) -> Outcome<RatInterval> {
    if (!b.charge(p)) return b.exhausted("spike: budget exhausted");
    return max(ExactReal(0), ExactReal(1) - abs(x - ExactReal(z)) * ExactReal(inv)).approx(p);
  });
}

RealFn remark19_family(const SeparatedSeqFixture& points, std::optional<std::size_t> one_at) {
  if (!one_at) {
    return RealFn([](const ExactReal&, int p, Budget& b) -> Outcome<RatInterval> {
      if (!b.charge(p)) return b.exhausted("remark19_family: budget exhausted");
      return RatInterval(Rational(1));
    });
  }
  const std::size_t m = *one_at;
  const Rational depth = 1 - make_rational(1, static_cast<long>(m));
  const RealFn t = spike(points.point(m), pow2(-static_cast<int>(m)));
  return RealFn([t, depth](const ExactReal& x, int p, Budget& b) -> Outcome<RatInterval> {
    auto v = t.eval(x, p + 1, b);
    if (!v) return v;
    return RatInterval(Rational(1)) - depth * *v;
  });
}

InfOracle remark19_inf(const SeparatedSeqFixture& points, std::optional<std::size_t> one_at) {
  if (!one_at) return constant_inf(1);
  const std::size_t m = *one_at;
  const Rational z = points.point(m);
  const Rational eps = pow2(-static_cast<int>(m));
  const Rational depth = 1 - make_rational(1, static_cast<long>(m));
  return [z, eps, depth](const RatInterval& I, int) {
    // The spike peaks at z: its maximum over I is at the point of I nearest z.
    const Rational nearest = max(I.lo(), min(z, I.hi()));
    return Rational(1 - depth * spike_value(z, eps, nearest));
  };
}

InfOracle quadratic_inf(const Rational& c, const Rational& k, const Rational& s) {
  return [c, k, s](const RatInterval& I, int) {
    const Rational nearest = max(I.lo(), min(c, I.hi()));
    const Rational d = nearest - c;
    return Rational(k * d * d + s);
  };
}

InfOracle constant_inf(const Rational& v) {
  return [v](const RatInterval&, int) { return v; };
}

InfOracle lipschitz_inf(const RealFn& f, const Rational& L, std::size_t max_points) {
  return [f, L, max_points](const RatInterval& I, int p) {
    // Grid spacing h with L h / 2 <= 2^-(p+2); values to 2^-(p+2).
    const Rational w = I.width();
    std::size_t n = 1;
    while (L * w / (2 * Rational(static_cast<long>(n))) > pow2(-(p + 2))) {
      n *= 2;
      if (n > max_points) throw EvaluationExhausted(Exhausted{0, p, I, "lipschitz_inf: grid too fine"});
    }
    Budget b(max_points * 4, p + 4 + 64);
    Rational best;
    for (std::size_t i = 0; i <= n; ++i) {
      const Rational x = I.lo() + w * static_cast<long>(i) / static_cast<long>(n);
      auto v = f.at(x, p + 2, b);
      if (!v) throw EvaluationExhausted(v.diagnostics());
      if (i == 0 || v->mid() < best) best = v->mid();
    }
    const Rational slack = L * w / (2 * Rational(static_cast<long>(n)));
    // inf lies in [best - slack - 2^-(p+2), best + 2^-(p+2)]; report the middle.
    return Rational(best - slack / 2);
  };
}

InfOracle branch_and_bound_inf(std::function<RatInterval(const RatInterval&)> image, std::size_t max_boxes) {
  return [image = std::move(image), max_boxes](const RatInterval& I, int p) {
    struct Box {
      Rational lower;
      RatInterval dom;
      bool operator<(const Box& o) const { return lower > o.lower; }
    };
    const Rational tol = pow2(-p);
    std::priority_queue<Box> queue;
    queue.push({image(I).lo(), I});
    Rational upper = image(RatInterval(I.lo())).hi();
    upper = min(upper, image(RatInterval(I.hi())).hi());
    std::size_t boxes = 0;
    while (!queue.empty()) {
      const Box b = queue.top();
      // Every remaining box has lower bound >= b.lower, so inf is in [b.lower, upper].
      if (upper - b.lower <= tol) return Rational((upper + b.lower) / 2);
      queue.pop();
      if (++boxes > max_boxes) throw EvaluationExhausted(Exhausted{boxes, p, b.dom, "branch_and_bound_inf: box limit"});
      const Rational m = b.dom.mid();
      upper = min(upper, image(RatInterval(m)).hi());
      for (const RatInterval& half : {RatInterval(b.dom.lo(), m), RatInterval(m, b.dom.hi())}) {
        const Rational lo = image(half).lo();
        if (lo < upper) queue.push({lo, half});
      }
    }
    return upper;
  };
}

std::pair<RealFn, InfOracle> engineered_zero_inf() {
  RealFn f([](const ExactReal& x, int p, Budget& b) -> Outcome<RatInterval> {
    if (const auto& q = x.exact_value()) {
      if (!b.charge(p)) return b.exhausted("engineered: budget exhausted");
      if (*q == 0) return RatInterval(Rational(1));
      if (*q < 0) throw PreconditionFailed(PreconditionFailed::Kind::InvalidArgument, "engineered: x < 0");
      return RatInterval(*q);
    }
    for (int q = p;; ++q) {
      if (!b.charge(q)) return b.exhausted("engineered: argument not separated from 0");
      const RatInterval I = x.approx(q);
      if (I.lo() > 0) return x.approx(std::max(p, q));
    }
  });
  InfOracle inf = [](const RatInterval& I, int) { return I.lo() > 0 ? I.lo() : Rational(0); };
  return {f, inf};
}

}  // namespace dichot
