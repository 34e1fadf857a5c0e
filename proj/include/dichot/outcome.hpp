#pragma once

#include "dichot/interval.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace dichot {

/// Diagnostics attached to a computation that ran out of its declared budget.
struct Exhausted {
  std::size_t queries = 0;
  int deepest_precision = 0;
  std::optional<RatInterval> last_candidate;
  std::string reason;
};

/// Either a decided value (carrying its own certificate) or budget exhaustion.
template <typename T>
class Outcome {
 public:
  Outcome(T value) : state_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Outcome(Exhausted e) : state_(std::move(e)) {}  // NOLINT(google-explicit-constructor)

  bool decided() const { return std::holds_alternative<T>(state_); }
  bool exhausted() const { return !decided(); }
  explicit operator bool() const { return decided(); }

  const T& value() const& {
    if (!decided()) throw std::logic_error("Outcome::value on Exhausted: " + diagnostics().reason);
    return std::get<T>(state_);
  }
  T&& value() && {
    if (!decided()) throw std::logic_error("Outcome::value on Exhausted: " + diagnostics().reason);
    return std::get<T>(std::move(state_));
  }
  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

  const Exhausted& diagnostics() const { return std::get<Exhausted>(state_); }

 private:
  std::variant<T, Exhausted> state_;
};

/// Per-invocation resource limit. Every query strictly decreases the remaining count.
class Budget {
 public:
  static constexpr std::size_t kDefaultQueries = 2'000'000;

  Budget() = default;
  Budget(std::size_t max_queries, int max_precision) : max_queries_(max_queries), max_precision_(max_precision) {}
  /// Budget whose precision (and bisection depth) cap is `depth`.
  static Budget depth(int depth) { return Budget(kDefaultQueries, depth); }

  std::size_t max_queries() const { return max_queries_; }
  int max_precision() const { return max_precision_; }
  std::size_t used() const { return used_; }
  std::size_t remaining() const { return max_queries_ - used_; }
  int deepest() const { return deepest_; }

  /// Charges one query at precision p; false when the budget cannot cover it.
  bool charge(int p = 0) {
    if (used_ >= max_queries_ || p > max_precision_) return false;
    ++used_;
    if (p > deepest_) deepest_ = p;
    return true;
  }
  bool allows_precision(int p) const { return p <= max_precision_; }

  Exhausted exhausted(std::string reason, std::optional<RatInterval> candidate = std::nullopt) const {
    return Exhausted{used_, deepest_, std::move(candidate), std::move(reason)};
  }

 private:
  std::size_t max_queries_ = kDefaultQueries;
  int max_precision_ = 64;
  std::size_t used_ = 0;
  int deepest_ = 0;
};

/// A violated (checkable) precondition of an algorithm.
class PreconditionFailed : public std::runtime_error {
 public:
  enum class Kind { SameSignEndpoints, NotPositive, QuasiConvexityViolated, MonotonicityViolated, InvalidArgument };
  PreconditionFailed(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(PreconditionFailed::Kind kind);

/// Thrown from inside lazily evaluated objects (ExactReal approximations,
/// binary sequences) when an evaluation they depend on exhausted its budget.
class EvaluationExhausted : public std::runtime_error {
 public:
  explicit EvaluationExhausted(Exhausted diag) : std::runtime_error(diag.reason), diag_(std::move(diag)) {}
  const Exhausted& diagnostics() const { return diag_; }

 private:
  Exhausted diag_;
};

}  // namespace dichot
