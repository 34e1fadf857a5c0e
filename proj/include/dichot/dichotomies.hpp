#pragma once

#include "dichot/outcome.hpp"
#include "dichot/real.hpp"
#include "dichot/streams.hpp"

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace dichot {

// ---- decomposition of the line ----

enum class CoverPart { LowerSet, UpperSet };  ///< (-inf, b] or (a, inf)

/// Decides membership for the covering R = (-inf, b] u (a, inf). Soundness is
/// trusted: LowerSet means z <= b, UpperSet means z > a.
using CoveringDecision = std::function<CoverPart(const ExactReal&)>;

/// A sound decision, total whenever a < b or the query is exactly comparable.
CoveringDecision sound_covering(const ExactReal& a, const ExactReal& b);

struct ALessB {
  Rational gap;  ///< b - a > gap > 0
};
struct AEqualsB {};
using LineDecomposition = std::variant<ALessB, AEqualsB>;

/// Queries d once, at z = b + (b - a).
LineDecomposition decompose_line(const CoveringDecision& d, const ExactReal& a, const ExactReal& b);

// ---- located distance ----

struct LocatedSet {
  /// Within 2^-p of the distance from x to the set.
  std::function<Rational(const ExactReal&, int)> dist;
  /// A member q with |q - x| <= dist(x, p) + 2^-p.
  std::function<ExactReal(const ExactReal&, int)> near_point;
};

LocatedSet singleton_set(const Rational& c);
LocatedSet interval_set(const Rational& lo, const Rational& hi);
/// {2^-n : n >= 1}.
LocatedSet null_sequence_set();

struct ApartFromX {
  Rational gap;  ///< |z - x| > gap
};
struct NotInQ {};
using Separation = std::variant<ApartFromX, NotInQ>;
/// Trusted: for every z, z != x or z is not in Q.
using SeparationOracle = std::function<Separation(const ExactReal&)>;

/// Reports ApartFromX when |z - x| > 0 is certified by precision `probe`,
/// NotInQ otherwise. Sound only when x itself is outside Q or the caller
/// accepts it as a fixture.
SeparationOracle apartness_probe(const ExactReal& x, int probe);

struct DistPositive {
  Rational lower;  ///< dist(Q, x) > lower
  std::size_t flip_index = 0;
};
struct DistZero {
  std::size_t checked_upto = 0;  ///< dist(Q, x) < 2^-n was certified for n <= checked_upto
};
using DistanceDecision = std::variant<DistPositive, DistZero>;

Outcome<DistanceDecision> located_distance(const LocatedSet& q, const ExactReal& x, const SeparationOracle& sep,
                                           Budget& budget);

// ---- neat locatedness ----

struct FiniteApprox {
  std::vector<ExactReal> points;
  std::size_t scanned = 0;  ///< every scanned point is within eps of some entry
};
struct SeparatedSeq {
  std::vector<ExactReal> points;  ///< pairwise certified > eps/2 apart
};
using NeatResult = std::variant<FiniteApprox, SeparatedSeq>;

struct NeatOptions {
  std::size_t scan = 4096;         ///< dense-oracle points examined
  std::size_t max_centers = 256;   ///< packing size that counts as an infinite separated sequence
};

/// Greedy packing over a dense enumeration of A (indexed from 1).
Outcome<NeatResult> neat_dichotomy(const std::function<ExactReal(std::size_t)>& dense, const Rational& eps,
                                   Budget& budget, NeatOptions options = {});

/// 0, 1, 1/2, 1/4, 3/4, 1/8, 3/8, ...
std::function<ExactReal(std::size_t)> dyadic_enumeration();

struct NeatCovering {
  std::function<bool(const Rational&)> S, T, S_prime, T_prime;
  Rational eps;
};

struct NeatViolation {
  enum class Kind { Gap, CoverT, CoverS };
  Kind kind;
  Rational s, t;  ///< Gap: the offending pair; Cover: s = t = the uncovered point
  std::string str() const;
};

struct NeatReport {
  std::vector<NeatViolation> violations;
  std::size_t samples = 0;
  bool valid() const { return violations.empty(); }
};

/// Checks the gap condition on all sampled pairs and the two cover conditions
/// on every sample.
NeatReport validate_neat_covering(const NeatCovering& c, const std::vector<Rational>& samples);

}  // namespace dichot
