#include "dichot/real.hpp"

#include "dichot/outcome.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <string>

namespace dichot {

namespace {

std::atomic<int> g_precision_limit{4096};

// Keeps endpoint sizes bounded: once denominators grow well past what the
// requested precision needs, snap outward to the 2^-(p+2) grid. Requires
// width(r) <= 2^-(p+1) so the result still has width <= 2^-p.
RatInterval compact(const RatInterval& r, int p) {
  const std::size_t budget_bits = static_cast<std::size_t>(p < 0 ? 0 : p) + 64;
  if (denominator_bits(r.lo()) > budget_bits || denominator_bits(r.hi()) > budget_bits) {
    return round_outward(r, p + 2);
  }
  return r;
}

// Raises working precision q = p + 2, p + 4, p + 8, ... until compute(q) is
// narrower than 2^-(p+1).
template <typename F>
RatInterval escalate(int p, F&& compute) {
  int extra = 2;
  for (;;) {
    const int q = p + extra;
    if (q > g_precision_limit.load()) {
      throw PrecisionLimitExceeded("working precision " + std::to_string(q) + " exceeds limit " +
                                   std::to_string(g_precision_limit.load()));
    }
    RatInterval r = compute(q);
    if (r.within(p + 1)) return compact(r, p);
    extra *= 2;
  }
}

}  // namespace

int precision_limit() { return g_precision_limit.load(); }
void set_precision_limit(int bits) { g_precision_limit.store(bits); }

const char* to_string(PreconditionFailed::Kind kind) {
  switch (kind) {
    case PreconditionFailed::Kind::SameSignEndpoints: return "SameSignEndpoints";
    case PreconditionFailed::Kind::NotPositive: return "NotPositive";
    case PreconditionFailed::Kind::QuasiConvexityViolated: return "QuasiConvexityViolated";
    case PreconditionFailed::Kind::MonotonicityViolated: return "MonotonicityViolated";
    case PreconditionFailed::Kind::InvalidArgument: return "InvalidArgument";
  }
  return "?";
}

struct ExactReal::Node {
  Approximator fn;
  std::optional<Rational> exact;
  mutable std::mutex mu;
  mutable std::map<int, RatInterval> memo;
};

ExactReal::ExactReal() : ExactReal(Rational(0)) {}

ExactReal::ExactReal(long n) : ExactReal(Rational(n)) {}

ExactReal::ExactReal(const Rational& q) {
  auto node = std::make_shared<Node>();
  node->fn = [q](int) { return RatInterval(q); };
  node->exact = q;
  node_ = std::move(node);
}

ExactReal::ExactReal(Approximator fn) {
  auto node = std::make_shared<Node>();
  node->fn = std::move(fn);
  node_ = std::move(node);
}

RatInterval ExactReal::approx(int p) const {
  if (node_->exact) return RatInterval(*node_->exact);
  {
    std::lock_guard lock(node_->mu);
    auto it = node_->memo.find(p);
    if (it != node_->memo.end()) return it->second;
  }
  // Computed outside the lock: the approximator may query other reals, and
  // it is deterministic, so a racing duplicate computation is harmless.
  RatInterval r = node_->fn(p);
  std::lock_guard lock(node_->mu);
  return node_->memo.emplace(p, std::move(r)).first->second;
}

const std::optional<Rational>& ExactReal::exact_value() const { return node_->exact; }

ExactReal real_from_rational(const Rational& q) { return ExactReal(q); }

ExactReal operator+(const ExactReal& x, const ExactReal& y) {
  if (x.exact_value() && y.exact_value()) return ExactReal(Rational(*x.exact_value() + *y.exact_value()));
  return ExactReal([x, y](int p) { return escalate(p, [&](int q) { return x.approx(q) + y.approx(q); }); });
}

ExactReal operator-(const ExactReal& x, const ExactReal& y) {
  if (x.exact_value() && y.exact_value()) return ExactReal(Rational(*x.exact_value() - *y.exact_value()));
  return ExactReal([x, y](int p) { return escalate(p, [&](int q) { return x.approx(q) - y.approx(q); }); });
}

ExactReal operator*(const ExactReal& x, const ExactReal& y) {
  if (x.exact_value() && y.exact_value()) return ExactReal(Rational(*x.exact_value() * *y.exact_value()));
  return ExactReal([x, y](int p) { return escalate(p, [&](int q) { return x.approx(q) * y.approx(q); }); });
}

ExactReal operator-(const ExactReal& x) {
  if (x.exact_value()) return ExactReal(Rational(-*x.exact_value()));
  return ExactReal([x](int p) { return -x.approx(p); });
}

ExactReal abs(const ExactReal& x) {
  if (x.exact_value()) return ExactReal(abs(*x.exact_value()));
  return ExactReal([x](int p) { return abs(x.approx(p)); });
}

ExactReal min(const ExactReal& x, const ExactReal& y) {
  if (x.exact_value() && y.exact_value()) return ExactReal(min(*x.exact_value(), *y.exact_value()));
  return ExactReal([x, y](int p) { return min(x.approx(p), y.approx(p)); });
}

ExactReal max(const ExactReal& x, const ExactReal& y) {
  if (x.exact_value() && y.exact_value()) return ExactReal(max(*x.exact_value(), *y.exact_value()));
  return ExactReal([x, y](int p) { return max(x.approx(p), y.approx(p)); });
}

ExactReal arith(ArithOp op, const ExactReal& x, const ExactReal& y) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Neg: return -x;
    case ArithOp::Abs: return abs(x);
    case ArithOp::Min: return min(x, y);
    case ArithOp::Max: return max(x, y);
  }
  return x;
}

int split_precision(const Rational& a, const Rational& b) {
  if (!(a < b)) throw std::invalid_argument("split: requires a < b");
  return precision_for(Rational((b - a) / 2));
}

SplitResult split_interval(const RatInterval& I, const Rational& a, const Rational& b) {
  if (!(I.width() < b - a)) throw std::invalid_argument("split_interval: enclosure too wide");
  // mid < c  =>  x <= mid + w/2 < c + (b-a)/2 = b;  mid >= c  =>  x > a symmetrically.
  return I.mid() < (a + b) / 2 ? SplitResult::IsBelow : SplitResult::IsAbove;
}

SplitResult split(const ExactReal& x, const Rational& a, const Rational& b) {
  return split_interval(x.approx(split_precision(a, b)), a, b);
}

int classify_precision(const Rational& small, const Rational& sign) {
  if (sign < 0 || !(sign < small)) throw std::invalid_argument("classify: requires 0 <= sign < small");
  return precision_for(Rational((small - sign) / 2));
}

Sign3 classify_interval(const RatInterval& I, const Rational& small, const Rational& sign) {
  if (I.width() > (small - sign) / 2) throw std::invalid_argument("classify_interval: enclosure too wide");
  const Rational c = (small + sign) / 2;
  const Rational m = I.mid();
  if (m > c) return Sign3::Positive;
  if (m < -c) return Sign3::Negative;
  return Sign3::Small;
}

Sign3 classify(const ExactReal& x, const Rational& small, const Rational& sign) {
  return classify_interval(x.approx(classify_precision(small, sign)), small, sign);
}

Sign3 sign_or_small(const ExactReal& x, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("sign_or_small: eps must be positive");
  return classify(x, Rational(eps / 2), Rational(eps / 4));
}

ExactReal limit(std::function<ExactReal(std::size_t)> term, std::function<std::size_t(int)> modulus) {
  return ExactReal([term = std::move(term), modulus = std::move(modulus)](int p) {
    const Rational r = pow2(-(p + 3));
    RatInterval I = widen(term(modulus(p + 3)).approx(p + 3), r);
    return compact(I, p);
  });
}

const char* to_string(SplitResult r) { return r == SplitResult::IsBelow ? "IsBelow" : "IsAbove"; }

const char* to_string(Sign3 s) {
  switch (s) {
    case Sign3::Positive: return "Positive";
    case Sign3::Negative: return "Negative";
    case Sign3::Small: return "Small";
  }
  return "?";
}

}  // namespace dichot
