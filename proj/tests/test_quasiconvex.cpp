#include "oracles.hpp"

#include "dichot/expr.hpp"
#include "dichot/quasiconvex.hpp"

#include <doctest.h>

using namespace dichot;
using oracle::rat;

TEST_SUITE("quasiconvex") {
  TEST_CASE("spike values") {
    CHECK(spike_value(rat(1, 2), rat(1, 4), rat(1, 2)) == 1);
    CHECK(spike_value(rat(1, 2), rat(1, 4), rat(5, 8)) == rat(1, 2));
    CHECK(spike_value(rat(1, 2), rat(1, 4), 1) == 0);
    Budget b;
    CHECK(spike(rat(1, 2), rat(1, 4)).at(rat(3, 8), 20, b)->contains(rat(1, 2)));
  }

  TEST_CASE("quasi-convexity check flags a bump") {
    Budget b;
    auto ok = quasiconvex_check(compile(parse("(x - 1/3) * (x - 1/3)")).real, grid_triples(6), 20, b);
    REQUIRE(ok);
    CHECK(ok->ok());
    CHECK(ok->checked > 0);
    auto bad = quasiconvex_check(spike(rat(1, 2), rat(1, 4)), grid_triples(6), 20, b);
    REQUIRE(bad);
    CHECK_FALSE(bad->ok());
  }

  TEST_CASE("infimum oracles bound the true infimum") {
    const RatInterval all(0, 1);
    CHECK(oracle::qabs(quadratic_inf(rat(1, 3), 2, rat(1, 5))(all, 20) - rat(1, 5)) <= pow2(-20));
    CHECK(oracle::qabs(quadratic_inf(rat(1, 3), 2, rat(1, 5))(RatInterval(rat(1, 2), 1), 20) -
                       (2 * rat(1, 36) + rat(1, 5))) <= pow2(-20));
    const ExprPtr e = parse("abs(x - 2/3) + 1/10");
    const InfOracle bb = branch_and_bound_inf([e](const RatInterval& I) { return image(*e, I); });
    CHECK(oracle::qabs(bb(all, 12) - rat(1, 10)) <= pow2(-12));
    const InfOracle lip = lipschitz_inf(compile(e).real, 1);
    CHECK(oracle::qabs(lip(RatInterval(0, rat(1, 2)), 10) - (rat(1, 6) + rat(1, 10))) <= pow2(-10));
  }

  TEST_CASE("positive infimum is certified with a witness") {
    InfTrace trace;
    Budget b = Budget::depth(40);
    auto r = inf_dichotomy(compile(parse("(x - 3/4) * (x - 3/4) + 1/32")).real, quadratic_inf(rat(3, 4), 1, rat(1, 32)),
                           b, &trace);
    REQUIRE(r);
    REQUIRE(std::holds_alternative<InfPositive>(*r));
    CHECK(std::get<InfPositive>(*r).lower <= rat(1, 32));
    CHECK(std::get<InfPositive>(*r).lower > 0);
  }

  TEST_CASE("a non-positive function is rejected") {
    Budget b = Budget::depth(40);
    try {
      (void)inf_dichotomy(compile(parse("x - 1/2")).real, constant_inf(rat(-1, 2)), b);
      FAIL("expected PreconditionFailed");
    } catch (const PreconditionFailed& e) {
      CHECK(e.kind() == PreconditionFailed::Kind::NotPositive);
    }
  }

  TEST_CASE("family without a spike is constant") {
    const auto seq = SeparatedSeqFixture::dyadic_tail();
    Budget b;
    CHECK(remark19_family(seq, std::nullopt).at(rat(3, 4), 20, b)->contains(1));
    CHECK(remark19_inf(seq, std::nullopt)(RatInterval(0, 1), 20) == 1);
    CHECK(oracle::qabs(remark19_inf(seq, 3)(RatInterval(0, 1), 20) - rat(1, 3)) <= pow2(-20));
  }

  TEST_CASE("engineered zero keeps f positive at the limit point") {
    const auto [f, inf] = engineered_zero_inf();
    Budget b;
    CHECK(f.at(0, 10, b)->contains(1));
    CHECK(f.at(rat(1, 8), 10, b)->contains(rat(1, 8)));
    CHECK(inf(RatInterval(0, 1), 10) <= pow2(-10));
  }
}
