#include "oracles.hpp"

#include "dichot/expr.hpp"
#include "dichot/ivt.hpp"

#include <doctest.h>

using namespace dichot;
using oracle::rat;

TEST_SUITE("functions") {
  TEST_CASE("lifted step exhausts at its jump and nowhere else") {
    const RealFn f = lift(step_fn(rat(1, 2), 0, 1));
    Budget b = Budget::depth(30);
    CHECK(f.at(rat(1, 4), 10, b)->contains(0));
    CHECK(f.at(rat(1, 2), 10, b)->contains(1));  // exact argument
    Budget tight = Budget::depth(30);
    const ExactReal opaque(ExactReal::Approximator([](int p) { return RatInterval(rat(1, 2) - pow2(-p - 1), rat(1, 2)); }));
    CHECK(f.eval(opaque, 10, tight).exhausted());
  }

  TEST_CASE("transformations") {
    const RealFn f = compile(parse("x * x")).real;
    Budget b;
    CHECK(shifted(f, rat(1, 4)).at(rat(1, 2), 20, b)->contains(0));
    CHECK(negated(f).at(rat(1, 2), 20, b)->contains(rat(-1, 4)));
    CHECK(reflected(f).at(rat(1, 4), 20, b)->contains(rat(9, 16)));
  }

  TEST_CASE("sampled monotonicity") {
    std::vector<Rational> pts;
    for (int i = 0; i <= 16; ++i) pts.push_back(rat(i, 16));
    Budget b;
    CHECK(sampled_monotone(MonotoneFn{compile(parse("x * x")).real, Direction::Increasing}, pts, 20, b));
    CHECK_FALSE(sampled_monotone(MonotoneFn{compile(parse("-x")).real, Direction::Increasing}, pts, 20, b));
    CHECK(sampled_monotone(MonotoneFn{compile(parse("-x")).real, Direction::Decreasing}, pts, 20, b));
  }
}

TEST_SUITE("ivt") {
  TEST_CASE("root of a line") {
    Budget b = Budget::depth(40);
    auto r = approx_root(compile(parse("x - 1/3")).real, rat(1, 1000), b);
    REQUIRE(r);
    REQUIRE(std::holds_alternative<Root>(*r));
    CHECK(oracle::qabs(std::get<Root>(*r).point - rat(1, 3)) < rat(1, 1000));
  }

  TEST_CASE("falling function is oriented") {
    BisectionTrace trace;
    Budget b = Budget::depth(40);
    auto r = approx_root(compile(parse("1/2 - x")).real, rat(1, 100), b, &trace);
    REQUIRE(r);
    CHECK(trace.flipped);
    CHECK(std::holds_alternative<Root>(*r));
  }

  TEST_CASE("same sign endpoints") {
    Budget b = Budget::depth(40);
    try {
      (void)approx_root(compile(parse("x + 1")).real, rat(1, 10), b);
      FAIL("expected PreconditionFailed");
    } catch (const PreconditionFailed& e) {
      CHECK(e.kind() == PreconditionFailed::Kind::SameSignEndpoints);
    }
  }

  TEST_CASE("jump evidence approaches from the other side") {
    Budget b = Budget::depth(32);
    auto r = approx_root(compile(parse("step(2/5; -1, 1)")).real, rat(1, 2), b);
    REQUIRE(r);
    REQUIRE(std::holds_alternative<Stuck>(*r));
    const auto& ev = std::get<Stuck>(*r).evidence;
    CHECK(ev.gap_certificate < 0);
    CHECK(ev.resolution <= pow2(-32));
    for (const auto& x : ev.approach_points) CHECK((x < rat(2, 5)) != (ev.z_point < rat(2, 5)));
    const RatInterval L = limit(ev.approach).approx(40);
    CHECK(oracle::qabs(L.mid() - ev.z_point) <= ev.resolution + pow2(-39));
  }

  TEST_CASE("rational-only bisection") {
    auto r = approx_root_rational(compile(parse("x - 1/3")).rational, rat(1, 64), 30);
    REQUIRE(std::holds_alternative<RootAtRational>(r));
    CHECK(oracle::qabs(std::get<RootAtRational>(r).q - rat(1, 3)) < rat(1, 64));
    auto s = approx_root_rational(step_fn(rat(1, 3), -1, 1), rat(1, 4), 30);
    REQUIRE(std::holds_alternative<Candidate>(s));
    const auto& c = std::get<Candidate>(s);
    CHECK(c.a < rat(1, 3));
    CHECK(c.b >= rat(1, 3));
  }

  TEST_CASE("unit rationals") {
    const auto q = unit_rationals();
    CHECK(q(1) == 0);
    CHECK(q(2) == 1);
    CHECK(q(3) == rat(1, 2));
    CHECK(q(4) == rat(1, 3));
    CHECK(q(5) == rat(2, 3));
  }

  TEST_CASE("rational dichotomy with an oracle") {
    const auto e = unit_rationals();
    Budget b = Budget::depth(40);
    auto r = cor7_decide(compile(parse("x - 1/3")).real, rat(1, 100), bounded_search_oracle(64), e, b);
    REQUIRE(r);
    CHECK(std::holds_alternative<RootBelowEps>(*r));

    // f = 1 never gets below eps; only an AllZero verdict can certify it
    Budget b2 = Budget::depth(40);
    auto u = cor7_decide(compile(parse("1")).real, rat(1, 100), bounded_search_oracle(64), e, b2,
                         Cor7Options{false});
    CHECK(u.exhausted());
    Budget b3 = Budget::depth(40);
    auto a = cor7_decide(compile(parse("1")).real, rat(1, 100), fixture_oracle(Verdict::all_zero()), e, b3,
                         Cor7Options{false});
    REQUIRE(a);
    CHECK(std::holds_alternative<AllRationalsAtLeast>(*a));
  }
}
