#pragma once

#include "dichot/interval.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>

namespace dichot {

/// Raised when arithmetic would need a working precision beyond the hard limit.
class PrecisionLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hard cap on internal working precision (default 4096 bits).
int precision_limit();
void set_precision_limit(int bits);

/// A real number given by rational enclosures: approx(p) has width <= 2^-p and
/// all enclosures of one value intersect. Immutable and cheap to copy; the
/// per-precision cache is internally synchronised.
class ExactReal {
 public:
  using Approximator = std::function<RatInterval(int)>;

  ExactReal();  // zero
  ExactReal(const Rational& q);  // NOLINT(google-explicit-constructor)
  ExactReal(long n);  // NOLINT(google-explicit-constructor)
  /// `fn` must honour the width and consistency contract.
  explicit ExactReal(Approximator fn);

  RatInterval approx(int p) const;
  /// Set when the value is known to be exactly this rational.
  const std::optional<Rational>& exact_value() const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

ExactReal real_from_rational(const Rational& q);

ExactReal operator+(const ExactReal& x, const ExactReal& y);
ExactReal operator-(const ExactReal& x, const ExactReal& y);
ExactReal operator*(const ExactReal& x, const ExactReal& y);
ExactReal operator-(const ExactReal& x);
ExactReal abs(const ExactReal& x);
ExactReal min(const ExactReal& x, const ExactReal& y);
ExactReal max(const ExactReal& x, const ExactReal& y);

enum class ArithOp { Add, Sub, Mul, Neg, Abs, Min, Max };
/// Dispatches on `op`; unary ops ignore `y`.
ExactReal arith(ArithOp op, const ExactReal& x, const ExactReal& y = ExactReal());

/// Result of the decidable two-sided comparison against a < b.
enum class SplitResult {
  IsBelow,  ///< x < b
  IsAbove,  ///< x > a
};

/// Three-way approximate sign.
enum class Sign3 { Positive, Negative, Small };

/// Decides x < b or x > a for a < b. Always terminates.
SplitResult split(const ExactReal& x, const Rational& a, const Rational& b);

/// Positive => x > eps/4, Negative => x < -eps/4, Small => |x| < eps/2.
Sign3 sign_or_small(const ExactReal& x, const Rational& eps);

/// General three-way split: Positive => x > sign, Negative => x < -sign,
/// Small => |x| < small. Requires 0 <= sign < small.
Sign3 classify(const ExactReal& x, const Rational& small, const Rational& sign);

// Interval-level forms of the decision rules, for enclosures that come from
// partial function evaluations rather than from an ExactReal.

/// Precision at which an enclosure is narrow enough for split(a, b).
int split_precision(const Rational& a, const Rational& b);
/// Requires width(I) < b - a.
SplitResult split_interval(const RatInterval& I, const Rational& a, const Rational& b);
/// Precision at which an enclosure is narrow enough for classify(small, sign).
int classify_precision(const Rational& small, const Rational& sign);
/// Requires width(I) <= (small - sign) / 2.
Sign3 classify_interval(const RatInterval& I, const Rational& small, const Rational& sign);

/// Limit of a sequence with modulus: for all n >= modulus(p), |term(n) - limit| <= 2^-p.
ExactReal limit(std::function<ExactReal(std::size_t)> term, std::function<std::size_t(int)> modulus);

const char* to_string(SplitResult r);
const char* to_string(Sign3 s);

}  // namespace dichot
