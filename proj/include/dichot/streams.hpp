#pragma once

#include "dichot/real.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace dichot {

/// Lazily evaluated binary sequence indexed from 1. Sequences built with
/// `from_predicate` are increasing by construction (term(n) is the running OR
/// of the predicate); `raw` sequences are taken as given and are meant for
/// exercising validators.
class BinarySeq {
 public:
  static BinarySeq zeros();
  /// Least index with term = 1 is m.
  static BinarySeq flip_at(std::size_t m);
  static BinarySeq from_predicate(std::function<bool(std::size_t)> pred);
  static BinarySeq raw(std::function<bool(std::size_t)> term);

  bool operator()(std::size_t n) const;
  /// Least m <= upto with term(m) = 1.
  std::optional<std::size_t> first_one(std::size_t upto) const;

 private:
  struct State;
  explicit BinarySeq(std::shared_ptr<State> s) : state_(std::move(s)) {}
  std::shared_ptr<State> state_;
};

/// term(n) = 1 implies term(n+1) = 1 for all n < upto.
bool is_increasing_prefix(const BinarySeq& seq, std::size_t upto);

/// Sequence of reals with an explicit Cauchy modulus towards `limit_point`:
/// for all n >= modulus(p), |term(n) - limit_point| <= 2^-p.
struct ConvergentSeq {
  std::function<ExactReal(std::size_t)> term;
  ExactReal limit_point;
  std::function<std::size_t(int)> modulus;

  /// Sequence whose limit point is defined as the limit of its own terms.
  static ConvergentSeq self_limiting(std::function<ExactReal(std::size_t)> term,
                                     std::function<std::size_t(int)> modulus);
  /// x_n = base + sign * 2^-n, converging to base with modulus p -> max(p, 1).
  static ConvergentSeq dyadic_approach(const Rational& base, int sign);
  /// Tail starting at index `start` (reindexed from 1).
  ConvergentSeq tail(std::size_t start) const;
};

ExactReal limit(const ConvergentSeq& seq);

/// Checks the modulus invariant for indices modulus(p) .. modulus(p) + span at
/// precision p + 4: no enclosure of |term(n) - limit| lies entirely above 2^-p.
bool check_modulus(const ConvergentSeq& seq, int p, std::size_t span);

/// lambda (*) xs: term(n) = xs.term(m) when lambda(n) = 1, m the least index
/// with lambda(m) = 1; term(n) = xs.limit_point when lambda(n) = 0.
ConvergentSeq splice(const BinarySeq& lambda, const ConvergentSeq& xs);

/// An answer to "is this binary sequence all zero?".
struct Verdict {
  enum class Kind { AllZero, FirstOneAt, Unknown };
  Kind kind = Kind::Unknown;
  std::size_t index = 0;  ///< FirstOneAt: the index; Unknown: the search bound

  static Verdict all_zero() { return {Kind::AllZero, 0}; }
  static Verdict first_one_at(std::size_t n) { return {Kind::FirstOneAt, n}; }
  static Verdict unknown(std::size_t bound) { return {Kind::Unknown, bound}; }
  std::string str() const;
};

/// Stand-in for LPO. Bounded search never answers AllZero.
class OmniscienceOracle {
 public:
  explicit OmniscienceOracle(std::function<Verdict(const BinarySeq&)> decide) : decide_(std::move(decide)) {}
  Verdict decide(const BinarySeq& seq) const { return decide_(seq); }

 private:
  std::function<Verdict(const BinarySeq&)> decide_;
};

OmniscienceOracle bounded_search_oracle(std::size_t n);
/// Always answers `ground_truth`; pair only with sequences it describes.
OmniscienceOracle fixture_oracle(Verdict ground_truth);

/// Prefix check that `truth` is consistent with seq(1..upto).
bool validate_pairing(const Verdict& truth, const BinarySeq& seq, std::size_t upto);

/// Finite surrogate for a Specker sequence: rational points with explicit
/// separation witnesses up to a test horizon.
class SeparatedSeqFixture {
 public:
  SeparatedSeqFixture(std::function<Rational(std::size_t)> points, std::size_t horizon)
      : points_(std::move(points)), horizon_(horizon) {}

  /// r_n = 1 - 2^-(n+1).
  static SeparatedSeqFixture dyadic_tail(std::size_t horizon = 64);

  Rational point(std::size_t n) const { return points_(n); }
  std::size_t horizon() const { return horizon_; }
  /// Least n with |point(i) - x| > 2^-n for every i in [n, horizon].
  std::size_t separation(const Rational& x) const;

 private:
  std::function<Rational(std::size_t)> points_;
  std::size_t horizon_;
};

}  // namespace dichot
