#pragma once

#include "dichot/functions.hpp"
#include "dichot/streams.hpp"

#include <functional>
#include <variant>
#include <vector>

namespace dichot {

/// Three-way split thresholds: Small certifies |v| < small, Positive/Negative
/// certify |v| > sign.
struct Thresholds {
  Rational small;
  Rational sign;
};

enum class ApproachSide { FromLeft, FromRight, Mixed };

/// A point z, a sequence approaching it from the other side of a sign change,
/// and certified products f(z) * f(x_n).
struct DiscontinuityEvidence {
  ExactReal z;
  Rational z_point;
  ConvergentSeq approach;
  std::vector<Rational> approach_points;   ///< the tested terms
  std::vector<RatInterval> products;       ///< certified enclosures of f(z) * f(x_n)
  Rational gap_certificate;                ///< every product is < gap_certificate (< 0)
  Rational resolution;                     ///< |z - lim approach| <= resolution
  ApproachSide side = ApproachSide::Mixed;
};

struct Root {
  ExactReal z;
  Rational point;
  Rational value_bound;  ///< certified |f(z)| < value_bound
};

struct Stuck {
  DiscontinuityEvidence evidence;
};

using RootResult = std::variant<Root, Stuck>;

/// One row of the bisection record, oriented so that f(a) < 0 < f(b).
struct BisectionStep {
  std::size_t n = 0;
  Rational a, b;
  RatInterval fa, fb;
  bool lambda = false;  ///< set once the halving stopped at a small midpoint
};

struct BisectionTrace {
  std::vector<BisectionStep> steps;
  Rational sign_threshold;  ///< while lambda = 0: f(a) < -sign_threshold, f(b) > sign_threshold
  bool flipped = false;     ///< f was negated to orient the endpoints
};

/// Continuity-free approximate root on [0, 1]: a root with |f(z)| < eps, or
/// discontinuity evidence. Throws PreconditionFailed when both endpoints are
/// certified to have the same sign. Bisection depth is budget.max_precision().
Outcome<RootResult> approx_root(const RealFn& f, const Rational& eps, Budget& budget,
                                BisectionTrace* trace = nullptr);

/// General form on [lo, hi] with explicit midpoint and final thresholds.
Outcome<RootResult> approx_root_on(const RealFn& f, const Rational& lo, const Rational& hi,
                                   const Thresholds& midpoint, const Thresholds& final_test, Budget& budget,
                                   BisectionTrace* trace = nullptr);

struct RootAtRational {
  Rational q;
  Rational value_bound;
};

struct Candidate {
  ExactReal z;
  Rational a, b;             ///< f(a) < -eps/2 < eps/2 < f(b) (oriented)
  RatInterval fa, fb;
};

using RationalRootResult = std::variant<RootAtRational, Candidate>;

/// Bisection that queries f only at rational points.
RationalRootResult approx_root_rational(const RationalFn& f, const Rational& eps, std::size_t depth,
                                        BisectionTrace* trace = nullptr);

/// Enumeration of the rationals in [0, 1]: 0, 1, 1/2, 1/3, 2/3, 1/4, 3/4, ...
std::function<Rational(std::size_t)> unit_rationals();

struct RootBelowEps {
  ExactReal z;
  Rational point;
  Rational value_bound;
};

/// |f(q)| > bound for every rational q of the enumeration.
struct AllRationalsAtLeast {
  Rational bound;
};

using Cor7Result = std::variant<RootBelowEps, AllRationalsAtLeast>;

struct Cor7Options {
  /// When false, endpoints of the same sign skip straight to the oracle.
  bool require_sign_change = true;
};

/// Root below eps, or (only when the oracle certifies it) a uniform bound on
/// the rationals.
Outcome<Cor7Result> cor7_decide(const RealFn& f, const Rational& eps, const OmniscienceOracle& oracle,
                                const std::function<Rational(std::size_t)>& enumeration, Budget& budget,
                                Cor7Options options = {});

/// Evaluates f at q and applies the three-way split.
Outcome<std::pair<Sign3, RatInterval>> classify_at(const RealFn& f, const Rational& q, const Thresholds& th,
                                                   Budget& budget);

}  // namespace dichot
