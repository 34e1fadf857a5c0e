#include "oracles.hpp"

#include "dichot/expr.hpp"
#include "dichot/ishihara.hpp"

#include <doctest.h>

using namespace dichot;
using oracle::rat;

TEST_SUITE("ishihara") {
  TEST_CASE("distance enclosure") {
    Budget b;
    auto d = distance_at(compile(parse("x * x")).real, ExactReal(rat(1, 2)), ExactReal(0), 20, b);
    REQUIRE(d);
    CHECK(d->contains(rat(1, 4)));
    CHECK(d->within(20));
  }

  TEST_CASE("first trick on the identity") {
    // |x_n - 0| = 2^-n, so n = 1 is already above 1/4
    Budget b = Budget::depth(40);
    auto r = trick_one(compile(parse("x")).real, ConvergentSeq::dyadic_approach(0, 1), rat(1, 4), rat(1, 2), b);
    REQUIRE(r);
    REQUIRE(std::holds_alternative<WitnessAbove>(*r));
    CHECK(std::get<WitnessAbove>(*r).n == 1);
  }

  TEST_CASE("first trick finds a late witness") {
    // f = 1 on (0, 1/40), 0 elsewhere; x_n = 2^-n only moves away from f(0) once n >= 6
    const Rational c = rat(1, 40);
    RationalFn g;
    g.eval_q = [c](const Rational& q) { return ExactReal(q > 0 && q < c ? 1 : 0); };
    g.image = [c](const RatInterval& I) {
      if (I.is_point()) return RatInterval(I.lo() > 0 && I.lo() < c ? 1 : 0);
      const bool one = I.hi() > 0 && I.lo() < c, zero = I.lo() <= 0 || I.hi() >= c;
      return RatInterval(zero ? 0 : 1, one ? 1 : 0);
    };
    Budget b = Budget::depth(60);
    auto r = trick_one(lift(g), ConvergentSeq::dyadic_approach(0, 1), rat(1, 2), rat(3, 4), b);
    REQUIRE(r);
    REQUIRE(std::holds_alternative<WitnessAbove>(*r));
    CHECK(std::get<WitnessAbove>(*r).n >= 6);
  }

  TEST_CASE("second trick, eventually below") {
    Budget b = Budget::depth(60);
    auto r = trick_two(compile(parse("x")).real, ConvergentSeq::dyadic_approach(0, 1), rat(1, 8),
                       bounded_search_oracle(32), b);
    REQUIRE(r);
    REQUIRE(std::holds_alternative<EventuallyBelow>(*r));
    const std::size_t n = std::get<EventuallyBelow>(*r).n;
    for (std::size_t m = n; m < n + 20; ++m) CHECK(pow2(-int(m)) < rat(1, 8));
  }

  TEST_CASE("second trick, infinitely often needs the oracle") {
    const RealFn f = compile(parse("step(1/2; 0, 1)")).real;
    const ConvergentSeq xs = ConvergentSeq::dyadic_approach(rat(1, 2), -1);
    Budget b = Budget::depth(60);
    auto unknown = trick_two(f, xs, rat(1, 4), bounded_search_oracle(32), b, TrickTwoOptions{6});
    CHECK(unknown.exhausted());
    Budget b2 = Budget::depth(60);
    auto r = trick_two(f, xs, rat(1, 4), fixture_oracle(Verdict::all_zero()), b2, TrickTwoOptions{6});
    REQUIRE(r);
    REQUIRE(std::holds_alternative<InfinitelyOften>(*r));
    const auto& io = std::get<InfinitelyOften>(*r);
    REQUIRE(io.evidence.size() >= 2);
    for (std::size_t i = 1; i < io.evidence.size(); ++i) CHECK(io.evidence[i].n > io.evidence[i - 1].n);
    for (const auto& w : io.evidence) CHECK(w.certified_gap >= io.certified_gap);
  }
}
