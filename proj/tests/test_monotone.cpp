#include "oracles.hpp"

#include "dichot/expr.hpp"
#include "dichot/monotone.hpp"

#include <doctest.h>

using namespace dichot;
using oracle::rat;

namespace {
MonotoneFn inc(const char* text) { return MonotoneFn{compile(parse(text)).real, Direction::Increasing}; }
}  // namespace

TEST_SUITE("monotone") {
  TEST_CASE("one-sided limits at a jump") {
    const MonotoneFn g = inc("1/5 + stair(1/3, 3/5)");
    Budget b = Budget::depth(40);
    auto L = one_sided_limit(g, rat(1, 3), Side::Left, 20, b);
    auto R = one_sided_limit(g, rat(1, 3), Side::Right, 20, b);
    REQUIRE(L);
    REQUIRE(R);
    CHECK(oracle::qabs(L->approx(20).mid() - rat(1, 5)) < pow2(-18));
    CHECK(oracle::qabs(R->approx(20).mid() - rat(4, 5)) < pow2(-18));
  }

  TEST_CASE("one-sided limits of a continuous function agree with its value") {
    Budget b = Budget::depth(40);
    for (const Rational& x : {rat(1, 2), rat(1, 7), rat(9, 10)}) {
      auto L = one_sided_limit(inc("x * x"), x, Side::Left, 16, b);
      auto R = one_sided_limit(inc("x * x"), x, Side::Right, 16, b);
      REQUIRE(L);
      REQUIRE(R);
      CHECK(oracle::qabs(L->approx(16).mid() - x * x) < pow2(-14));
      CHECK(oracle::qabs(R->approx(16).mid() - x * x) < pow2(-14));
    }
  }

  TEST_CASE("decreasing functions are handled through their negation") {
    Budget b = Budget::depth(40);
    auto L = one_sided_limit(MonotoneFn{compile(parse("step(1/2; 1, 0)")).real, Direction::Decreasing}, rat(1, 2),
                             Side::Left, 12, b);
    REQUIRE(L);
    CHECK(oracle::qabs(L->approx(12).mid() - 1) < pow2(-10));
  }

  TEST_CASE("span limits combine the parts") {
    SpanFn f{{{ExactReal(2), inc("stair(1/2, 1)")}, {ExactReal(-1), inc("x")}}};
    Budget b = Budget::depth(40);
    auto R = span_one_sided_limit(f, rat(1, 2), Side::Right, 12, b);
    REQUIRE(R);
    CHECK(oracle::qabs(R->approx(12).mid() - rat(3, 2)) < pow2(-10));
  }

  TEST_CASE("eps steps on a staircase") {
    Budget b = Budget::depth(40);
    auto r = eps_steps(inc("stair(1/4, 1/2; 3/4, 1/2)"), rat(1, 4), b);
    REQUIRE(r);
    CHECK(r->points.front().x == 0);
    CHECK(r->points.back().x == 1);
    std::size_t steps = 0;
    for (const auto& p : r->points) {
      if (p.flag != StepPoint::Flag::StepCandidate) continue;
      ++steps;
      CHECK(p.bracket_lo < p.bracket_hi);
      CHECK(p.bracket_hi - p.bracket_lo <= pow2(-30));
    }
    CHECK(steps >= 2);
  }

  TEST_CASE("non-monotone input is rejected") {
    Budget b = Budget::depth(40);
    CHECK_THROWS_AS((void)eps_steps(inc("1 - x"), rat(1, 4), b), PreconditionFailed);
  }

  TEST_CASE("the discontinuity stream is lazy and sticky") {
    DiscontinuityStream s(inc("stair(1/3, 1/2)"), Budget::depth(40));
    std::size_t found = 0;
    for (std::size_t n = 1; n <= 12; ++n) {
      auto e = s.at(n);
      REQUIRE(e);
      found += std::holds_alternative<DiscontinuityPoint>(*e);
    }
    CHECK(found == 1);
    auto again = s.at(3);
    REQUIRE(again);
    auto pre = s.prefix(12);
    REQUIRE(pre);
    CHECK(count_points(*pre) == 1);

    DiscontinuityStream starved(inc("stair(1/3, 1/2)"), Budget(3, 40));
    auto first = starved.prefix(20);
    CHECK(first.exhausted());
    CHECK(starved.at(25).exhausted());
  }

  TEST_CASE("continuous functions give an all-star stream") {
    Budget b = Budget::depth(40);
    auto r = enumerate_discontinuities(inc("x * x"), 40, b);
    REQUIRE(r);
    CHECK(count_points(*r) == 0);
  }
}
