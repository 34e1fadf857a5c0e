#pragma once

// Test-side reference implementations. Nothing here calls into the library's
// evaluators: values are computed with plain mpq arithmetic so they can judge
// what the library returns.

#include "dichot/expr.hpp"
#include "dichot/functions.hpp"
#include "dichot/real.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using dichot::Rational;
using dichot::RatInterval;

inline Rational rat(long n, long d = 1) { return dichot::make_rational(n, d); }

inline Rational qabs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// Uniform-ish rational in [lo, hi] with denominator up to max_den.
inline Rational random_rational(std::mt19937_64& rng, const Rational& lo, const Rational& hi, long max_den = 64) {
  std::uniform_int_distribution<long> den(1, max_den);
  const long d = den(rng);
  std::uniform_int_distribution<long> num(0, d);
  return lo + (hi - lo) * rat(num(rng), d);
}

// ---- random arithmetic over ExactReal, paired with its exact value ----

struct ArithSample {
  dichot::ExactReal real;
  Rational exact;
  std::string text;
};

inline ArithSample random_arith(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 7);
  const int op = pick(rng);
  if (op == 0) {
    std::uniform_int_distribution<long> n(-40, 40), d(1, 17);
    const Rational q = rat(n(rng), d(rng));
    return {dichot::ExactReal(q), q, dichot::to_string(q)};
  }
  ArithSample a = random_arith(rng, depth - 1);
  if (op == 4) return {-a.real, Rational(-a.exact), "-(" + a.text + ")"};
  if (op == 5) return {dichot::abs(a.real), qabs(a.exact), "|" + a.text + "|"};
  ArithSample b = random_arith(rng, depth - 1);
  switch (op) {
    case 1: return {a.real + b.real, a.exact + b.exact, "(" + a.text + " + " + b.text + ")"};
    case 2: return {a.real - b.real, a.exact - b.exact, "(" + a.text + " - " + b.text + ")"};
    case 3: return {a.real * b.real, a.exact * b.exact, "(" + a.text + " * " + b.text + ")"};
    case 6: return {dichot::min(a.real, b.real), a.exact < b.exact ? a.exact : b.exact,
                    "min(" + a.text + ", " + b.text + ")"};
    default: return {dichot::max(a.real, b.real), a.exact < b.exact ? b.exact : a.exact,
                     "max(" + a.text + ", " + b.text + ")"};
  }
}

// ---- reference interpreter for dichot::Expr ----

inline Rational evaluate(const dichot::Expr& e, const Rational& x) {
  using K = dichot::Expr::Kind;
  auto arg = [&](std::size_t i) { return evaluate(*e.args[i], x); };
  switch (e.kind) {
    case K::Lit: return e.value;
    case K::Var: return x;
    case K::Add: return arg(0) + arg(1);
    case K::Sub: return arg(0) - arg(1);
    case K::Mul: return arg(0) * arg(1);
    case K::Neg: return -arg(0);
    case K::Abs: return qabs(arg(0));
    case K::Min: return std::min(arg(0), arg(1));
    case K::Max: return std::max(arg(0), arg(1));
    case K::Spike: {
      const Rational t = 1 - qabs(x - e.params[0]) / e.params[1];
      return t > 0 ? t : Rational(0);
    }
    case K::Step: return x < e.params[0] ? e.params[1] : e.params[2];
    case K::Stair: {
      Rational s = 0;
      for (std::size_t i = 0; i + 1 < e.params.size(); i += 2) {
        if (x >= e.params[i]) s += e.params[i + 1];
      }
      return s;
    }
    case K::Scale: return e.params[0] * arg(0);
  }
  return 0;
}

/// Random expression tree. `jumps` allows step and stair nodes.
inline dichot::ExprPtr random_expr(std::mt19937_64& rng, int depth, bool jumps = true) {
  using dichot::Expr;
  using K = Expr::Kind;
  std::uniform_int_distribution<int> leaf(0, 1);
  std::uniform_int_distribution<long> n(-9, 9), d(1, 8);
  auto small = [&] { return rat(n(rng), d(rng)); };
  auto unit = [&] { return random_rational(rng, 0, 1, 16); };
  if (depth <= 0) return leaf(rng) ? Expr::var() : Expr::lit(small());
  std::uniform_int_distribution<int> pick(0, jumps ? 13 : 11);
  switch (pick(rng)) {
    case 0: return Expr::var();
    case 1: return Expr::lit(small());
    case 2: return Expr::binary(K::Add, random_expr(rng, depth - 1, jumps), random_expr(rng, depth - 1, jumps));
    case 3: return Expr::binary(K::Sub, random_expr(rng, depth - 1, jumps), random_expr(rng, depth - 1, jumps));
    case 4: return Expr::binary(K::Mul, random_expr(rng, depth - 1, jumps), random_expr(rng, depth - 1, jumps));
    case 5: return Expr::unary(K::Neg, random_expr(rng, depth - 1, jumps));
    case 6: return Expr::unary(K::Abs, random_expr(rng, depth - 1, jumps));
    case 7: return Expr::binary(K::Min, random_expr(rng, depth - 1, jumps), random_expr(rng, depth - 1, jumps));
    case 8: return Expr::binary(K::Max, random_expr(rng, depth - 1, jumps), random_expr(rng, depth - 1, jumps));
    case 9: return Expr::with_params(K::Spike, {unit(), random_rational(rng, rat(1, 16), 1, 16)});
    case 10:
    case 11: return Expr::with_params(K::Scale, {small()}, {random_expr(rng, depth - 1, jumps)});
    case 12: return Expr::with_params(K::Step, {unit(), small(), small()});
    default: {
      std::vector<Rational> cs{unit(), unit(), unit()};
      std::sort(cs.begin(), cs.end());
      cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
      std::vector<Rational> params;
      for (const auto& c : cs) {
        params.push_back(c);
        params.push_back(small());
      }
      return Expr::with_params(K::Stair, params);
    }
  }
}

// ---- continuous piecewise-linear functions on [0, 1] ----

struct PiecewiseLinear {
  std::vector<Rational> xs;  ///< 0 = xs[0] < ... < xs.back() = 1
  std::vector<Rational> ys;

  Rational at(const Rational& q) const {
    if (q <= xs.front()) return ys.front();
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (q <= xs[i]) return ys[i - 1] + (ys[i] - ys[i - 1]) * (q - xs[i - 1]) / (xs[i] - xs[i - 1]);
    }
    return ys.back();
  }

  /// Exact range over [lo, hi]: extremes sit at the ends or at breakpoints.
  RatInterval range(const Rational& lo, const Rational& hi) const {
    Rational mn = std::min(at(lo), at(hi)), mx = std::max(at(lo), at(hi));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (lo < xs[i] && xs[i] < hi) {
        mn = std::min(mn, ys[i]);
        mx = std::max(mx, ys[i]);
      }
    }
    return RatInterval(mn, mx);
  }

  Rational lipschitz() const {
    Rational L = 1;
    for (std::size_t i = 1; i < xs.size(); ++i) L = std::max(L, qabs((ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1])));
    return L;
  }

  /// Exact-real evaluator: refines x until the range enclosure is narrow.
  dichot::RealFn real() const {
    const PiecewiseLinear self = *this;
    const int extra = dichot::precision_for(Rational(1 / lipschitz()));
    return dichot::RealFn([self, extra](const dichot::ExactReal& x, int p,
                                        dichot::Budget& budget) -> dichot::Outcome<RatInterval> {
      const int q = p + 2 + extra;
      if (!budget.charge(p)) return budget.exhausted("piecewise-linear evaluation");
      const RatInterval X = x.approx(q);
      const Rational lo = std::max(X.lo(), Rational(0)), hi = std::min(X.hi(), Rational(1));
      return lo <= hi ? self.range(lo, hi) : RatInterval(self.at(lo));
    });
  }
};

/// Random PL function with f(0) <= -1/4 and f(1) >= 1/4 (sign change certified).
inline PiecewiseLinear random_sign_change(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pieces(2, 7);
  const int k = pieces(rng);
  std::vector<Rational> inner;
  for (int i = 0; i < k - 1; ++i) inner.push_back(random_rational(rng, rat(1, 64), rat(63, 64), 64));
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
  PiecewiseLinear f;
  f.xs.push_back(0);
  for (const auto& x : inner) f.xs.push_back(x);
  f.xs.push_back(1);
  for (std::size_t i = 0; i < f.xs.size(); ++i) f.ys.push_back(random_rational(rng, -2, 2, 32));
  f.ys.front() = -random_rational(rng, rat(1, 4), 2, 16);
  f.ys.back() = random_rational(rng, rat(1, 4), 2, 16);
  return f;
}

// ---- increasing staircases with a linear part ----

struct Staircase {
  Rational slope;
  std::vector<std::pair<Rational, Rational>> jumps;  ///< (location, size), increasing locations

  Rational at(const Rational& q) const {
    Rational v = slope * q;
    for (const auto& [c, j] : jumps) {
      if (q >= c) v += j;
    }
    return v;
  }

  /// Supremum of |f(s) - f(t)| over s, t in the open interval (lo, hi).
  Rational open_variation(const Rational& lo, const Rational& hi) const {
    Rational v = slope * (hi - lo);
    for (const auto& [c, j] : jumps) {
      if (lo < c && c < hi) v += j;
    }
    return v;
  }

  std::string text() const {
    std::string s = dichot::to_string(slope) + " * x";
    if (jumps.empty()) return s;
    s += " + stair(";
    for (std::size_t i = 0; i < jumps.size(); ++i) {
      if (i) s += "; ";
      s += dichot::to_string(jumps[i].first) + ", " + dichot::to_string(jumps[i].second);
    }
    return s + ")";
  }
};

/// Three jumps at distinct interior points, each of size in [min_jump, 1/2].
inline Staircase random_staircase(std::mt19937_64& rng, const Rational& min_jump, const Rational& slope) {
  Staircase s{slope, {}};
  std::vector<Rational> cs;
  while (cs.size() < 3) {
    const Rational c = random_rational(rng, rat(1, 32), rat(31, 32), 97);
    bool ok = true;
    for (const auto& d : cs) ok = ok && qabs(c - d) > rat(1, 32);
    if (ok) cs.push_back(c);
  }
  std::sort(cs.begin(), cs.end());
  for (const auto& c : cs) s.jumps.emplace_back(c, random_rational(rng, min_jump, rat(1, 2), 16));
  return s;
}

}  // namespace oracle
