#include "oracles.hpp"

#include "dichot/dichotomies.hpp"

#include <doctest.h>

using namespace dichot;
using oracle::rat;

TEST_SUITE("dichotomies") {
  TEST_CASE("sound covering answers on both sides") {
    const CoveringDecision d = sound_covering(ExactReal(0), ExactReal(1));
    CHECK(d(ExactReal(rat(-5))) == CoverPart::LowerSet);
    CHECK(d(ExactReal(rat(5))) == CoverPart::UpperSet);
    const CoverPart mid = d(ExactReal(rat(1, 2)));
    CHECK((mid == CoverPart::LowerSet || mid == CoverPart::UpperSet));
  }

  TEST_CASE("decompose with an irrational-looking gap") {
    // a = limit of 1/3 - 2^-n truncations, b = 1/3: only enclosures are available
    const ExactReal a(ExactReal::Approximator([](int p) {
      return RatInterval(rat(1, 3) - pow2(-50) - pow2(-p - 2), rat(1, 3) - pow2(-50) + pow2(-p - 2));
    }));
    const ExactReal b(rat(1, 3));
    const LineDecomposition r = decompose_line(sound_covering(a, b), a, b);
    REQUIRE(std::holds_alternative<ALessB>(r));
    CHECK(std::get<ALessB>(r).gap < pow2(-50));
  }

  TEST_CASE("located sets") {
    const LocatedSet s = interval_set(rat(1, 4), rat(1, 2));
    CHECK(oracle::qabs(s.dist(ExactReal(1), 20) - rat(1, 2)) <= pow2(-20));
    CHECK(oracle::qabs(s.dist(ExactReal(rat(1, 3)), 20)) <= pow2(-20));
    const LocatedSet n = null_sequence_set();
    CHECK(oracle::qabs(n.dist(ExactReal(rat(3, 8)), 30) - rat(1, 8)) <= pow2(-30));
    const RatInterval q = n.near_point(ExactReal(rat(3, 8)), 30).approx(30);
    CHECK((q.contains(rat(1, 2)) || q.contains(rat(1, 4))));
  }

  TEST_CASE("distance from a point outside a singleton") {
    Budget b = Budget::depth(40);
    auto r = located_distance(singleton_set(rat(1, 2)), ExactReal(rat(1, 8)), apartness_probe(ExactReal(rat(1, 8)), 30), b);
    REQUIRE(r);
    REQUIRE(std::holds_alternative<DistPositive>(*r));
    CHECK(std::get<DistPositive>(*r).lower < rat(3, 8));
  }

  TEST_CASE("a probe as deep as the budget cannot separate") {
    Budget b = Budget::depth(40);
    auto r = located_distance(null_sequence_set(), ExactReal(0), apartness_probe(ExactReal(0), 40), b);
    CHECK(r.exhausted());
  }

  TEST_CASE("dyadic enumeration") {
    const auto d = dyadic_enumeration();
    const std::vector<Rational> want{0, 1, rat(1, 2), rat(1, 4), rat(3, 4), rat(1, 8), rat(3, 8)};
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(d(i + 1).approx(10).contains(want[i]));
  }

  TEST_CASE("greedy packing respects its options") {
    Budget b = Budget::depth(40);
    auto r = neat_dichotomy(dyadic_enumeration(), rat(1, 4), b, NeatOptions{64, 256});
    REQUIRE(r);
    REQUIRE(std::holds_alternative<FiniteApprox>(*r));
    CHECK(std::get<FiniteApprox>(*r).scanned == 64);
    CHECK(std::get<FiniteApprox>(*r).points.size() == 5);
  }

  TEST_CASE("neat covering validator") {
    // S = (-inf, 3/4], T = [0, inf) with buffers S' = [3/4, inf), T' = (-inf, 1/4]
    NeatCovering c;
    c.eps = rat(1, 4);
    c.S = [](const Rational& q) { return q <= rat(3, 4); };
    c.T = [](const Rational& q) { return q >= 0; };
    c.S_prime = [](const Rational& q) { return q >= rat(3, 4); };
    c.T_prime = [](const Rational& q) { return q <= rat(1, 4); };
    std::vector<Rational> samples;
    for (int i = -8; i <= 24; ++i) samples.push_back(rat(i, 16));
    CHECK(validate_neat_covering(c, samples).valid());

    // a hole: nothing covers (0, 1/2)
    c.T = [](const Rational& q) { return q >= rat(1, 2); };
    c.T_prime = [](const Rational& q) { return q <= 0; };
    c.S = [](const Rational& q) { return q <= 0; };
    const NeatReport bad = validate_neat_covering(c, samples);
    CHECK_FALSE(bad.valid());
    CHECK_FALSE(bad.violations.front().str().empty());
  }
}
