#include "dichot/streams.hpp"

#include <mutex>
#include <vector>

namespace dichot {

struct BinarySeq::State {
  std::function<bool(std::size_t)> fn;
  bool closure = true;  // running OR of fn
  std::mutex mu;
  std::vector<bool> prefix;  // prefix[i] = term(i + 1)
};

BinarySeq BinarySeq::from_predicate(std::function<bool(std::size_t)> pred) {
  auto s = std::make_shared<State>();
  s->fn = std::move(pred);
  return BinarySeq(std::move(s));
}

BinarySeq BinarySeq::raw(std::function<bool(std::size_t)> term) {
  auto s = std::make_shared<State>();
  s->fn = std::move(term);
  s->closure = false;
  return BinarySeq(std::move(s));
}

BinarySeq BinarySeq::zeros() {
  return from_predicate([](std::size_t) { return false; });
}

BinarySeq BinarySeq::flip_at(std::size_t m) {
  return from_predicate([m](std::size_t n) { return n >= m; });
}

bool BinarySeq::operator()(std::size_t n) const {
  if (n == 0) return false;
  if (!state_->closure) return state_->fn(n);
  std::lock_guard lock(state_->mu);
  auto& prefix = state_->prefix;
  if (!prefix.empty() && prefix.back() && n > prefix.size()) return true;
  while (prefix.size() < n) {
    const bool prev = !prefix.empty() && prefix.back();
    prefix.push_back(prev || state_->fn(prefix.size() + 1));
    if (prefix.back() && prefix.size() < n) return true;
  }
  return prefix[n - 1];
}

std::optional<std::size_t> BinarySeq::first_one(std::size_t upto) const {
  for (std::size_t n = 1; n <= upto; ++n) {
    if ((*this)(n)) return n;
  }
  return std::nullopt;
}

bool is_increasing_prefix(const BinarySeq& seq, std::size_t upto) {
  for (std::size_t n = 1; n < upto; ++n) {
    if (seq(n) && !seq(n + 1)) return false;
  }
  return true;
}

ConvergentSeq ConvergentSeq::self_limiting(std::function<ExactReal(std::size_t)> term,
                                           std::function<std::size_t(int)> modulus) {
  ConvergentSeq s;
  s.term = term;
  s.modulus = modulus;
  s.limit_point = dichot::limit(std::move(term), std::move(modulus));
  return s;
}

ConvergentSeq ConvergentSeq::dyadic_approach(const Rational& base, int sign) {
  ConvergentSeq s;
  s.term = [base, sign](std::size_t n) {
    return ExactReal(Rational(base + Rational(sign) * pow2(-static_cast<int>(n))));
  };
  s.limit_point = ExactReal(base);
  s.modulus = [](int p) { return static_cast<std::size_t>(p < 1 ? 1 : p); };
  return s;
}

ConvergentSeq ConvergentSeq::tail(std::size_t start) const {
  ConvergentSeq s;
  auto base = term;
  auto mod = modulus;
  const std::size_t offset = start == 0 ? 0 : start - 1;
  s.term = [base, offset](std::size_t n) { return base(n + offset); };
  s.limit_point = limit_point;
  s.modulus = [mod, offset](int p) {
    const std::size_t m = mod(p);
    return m > offset ? m - offset : std::size_t{1};
  };
  return s;
}

ExactReal limit(const ConvergentSeq& seq) { return limit(seq.term, seq.modulus); }

bool check_modulus(const ConvergentSeq& seq, int p, std::size_t span) {
  const std::size_t start = seq.modulus(p);
  const Rational bound = pow2(-p);
  for (std::size_t n = start; n <= start + span; ++n) {
    const RatInterval d = abs(seq.term(n).approx(p + 4) - seq.limit_point.approx(p + 4));
    if (d.lo() > bound) return false;
  }
  return true;
}

ConvergentSeq splice(const BinarySeq& lambda, const ConvergentSeq& xs) {
  // The spliced sequence is within 2^-p of its limit from xs.modulus(p) on:
  // either both are xs.limit_point, both are xs.term(m), or the term is the
  // limit point while the limit is xs.term(m) with m > n >= modulus(p).
  auto term = [lambda, xs](std::size_t n) -> ExactReal {
    if (!lambda(n)) return xs.limit_point;
    return xs.term(*lambda.first_one(n));
  };
  return ConvergentSeq::self_limiting(std::move(term), xs.modulus);
}

std::string Verdict::str() const {
  switch (kind) {
    case Kind::AllZero: return "AllZero";
    case Kind::FirstOneAt: return "FirstOneAt(" + std::to_string(index) + ")";
    case Kind::Unknown: return "Unknown(" + std::to_string(index) + ")";
  }
  return "?";
}

OmniscienceOracle bounded_search_oracle(std::size_t n) {
  return OmniscienceOracle([n](const BinarySeq& seq) {
    if (auto m = seq.first_one(n)) return Verdict::first_one_at(*m);
    return Verdict::unknown(n);
  });
}

OmniscienceOracle fixture_oracle(Verdict ground_truth) {
  return OmniscienceOracle([ground_truth](const BinarySeq&) { return ground_truth; });
}

bool validate_pairing(const Verdict& truth, const BinarySeq& seq, std::size_t upto) {
  switch (truth.kind) {
    case Verdict::Kind::AllZero:
      for (std::size_t n = 1; n <= upto; ++n) {
        if (seq(n)) return false;
      }
      return true;
    case Verdict::Kind::FirstOneAt:
      if (truth.index == 0 || !seq(truth.index)) return false;
      for (std::size_t n = 1; n < truth.index; ++n) {
        if (seq(n)) return false;
      }
      return true;
    case Verdict::Kind::Unknown:
      return true;
  }
  return false;
}

SeparatedSeqFixture SeparatedSeqFixture::dyadic_tail(std::size_t horizon) {
  return SeparatedSeqFixture([](std::size_t n) { return Rational(1 - pow2(-static_cast<int>(n + 1))); }, horizon);
}

std::size_t SeparatedSeqFixture::separation(const Rational& x) const {
  for (std::size_t n = 1; n <= horizon_; ++n) {
    const Rational gap = pow2(-static_cast<int>(n));
    bool ok = true;
    for (std::size_t i = n; i <= horizon_ && ok; ++i) ok = abs(Rational(points_(i) - x)) > gap;
    if (ok) return n;
  }
  return horizon_ + 1;
}

}  // namespace dichot
