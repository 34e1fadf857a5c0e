#pragma once

#include "dichot/functions.hpp"
#include "dichot/streams.hpp"

#include <variant>
#include <vector>

namespace dichot {

/// |f(x_n) - f(x)| > certified_gap (and certified_gap >= alpha).
struct WitnessAbove {
  std::size_t n = 0;
  Rational certified_gap;
};

/// |f(x_n) - f(x)| < beta for every n.
struct AllBelow {
  Rational beta;
};

using TrickOneResult = std::variant<WitnessAbove, AllBelow>;

/// First trick: for f strongly extensional and x_n -> x, decides
/// "some |f(x_n) - f(x)| > alpha" or "all |f(x_n) - f(x)| < beta".
/// A negative alpha is answered with index 1 and no evaluation at all.
Outcome<TrickOneResult> trick_one(const RealFn& f, const ConvergentSeq& xs, const Rational& alpha,
                                  const Rational& beta, Budget& budget);

struct EventuallyBelow {
  std::size_t n = 0;  ///< |f(x_m) - f(x)| < beta for all m >= n
};

struct FarIndex {
  std::size_t n = 0;
  Rational certified_gap;  ///< |f(x_n) - f(x)| > certified_gap
};

/// Strictly increasing indices far from f(x); complete only under the oracle.
struct InfinitelyOften {
  std::vector<FarIndex> evidence;
  Rational certified_gap;  ///< minimum over the evidence
};

using TrickTwoResult = std::variant<EventuallyBelow, InfinitelyOften>;

struct TrickTwoOptions {
  std::size_t max_tails = 12;  ///< tails start at 1, 2, 4, ..., 2^(max_tails - 1)
};

/// Second trick: |f(x_n) - f(x)| < beta eventually, or >= beta infinitely
/// often. The second branch needs the oracle.
Outcome<TrickTwoResult> trick_two(const RealFn& f, const ConvergentSeq& xs, const Rational& beta,
                                  const OmniscienceOracle& oracle, Budget& budget, TrickTwoOptions options = {});

/// Enclosure of |f(y) - f(x)| of width <= 2^-p.
Outcome<RatInterval> distance_at(const RealFn& f, const ExactReal& y, const ExactReal& x, int p, Budget& budget);

}  // namespace dichot
