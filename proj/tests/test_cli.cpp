#include "oracles.hpp"

#include "dichot/cli.hpp"
#include "dichot/expr.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace dichot;
using oracle::rat;

TEST_SUITE("expr") {
  TEST_CASE("precedence and printing") {
    CHECK(print(*parse("1 + 2 * x")) == "(1 + (2 * x))");
    CHECK(print(*parse("1 - x - x")) == "((1 - x) - x)");
    CHECK(print(*parse("-x")) == "-(x)");
    CHECK(print(*parse("-1/2")) == "-1/2");
    CHECK(print(*parse("step(1/3; -1, 1)")) == "step(1/3; -1, 1)");
    CHECK(print(*parse("max(x,abs(x))")) == "max(x, abs(x))");
  }

  TEST_CASE("parse errors carry a position and the expected tokens") {
    try {
      (void)parse("x + ");
      FAIL("expected InvalidExpression");
    } catch (const InvalidExpression& e) {
      CHECK(e.position() == 4);
      CHECK(e.expected().count("'x'") == 1);
    }
    CHECK_THROWS_AS(parse("stair(1/2, 1; 1/4, 1)"), InvalidExpression);
    CHECK_THROWS_AS(parse("spike(1/2; 0)"), InvalidExpression);
    CHECK_THROWS_AS(parse("foo(x)"), InvalidExpression);
    CHECK_THROWS_AS(parse("(x"), InvalidExpression);
    CHECK_THROWS_AS(parse("x)"), InvalidExpression);
  }

  TEST_CASE("interval image contains every sampled value") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 300; ++i) {
      const ExprPtr e = oracle::random_expr(rng, 4);
      Rational lo = oracle::random_rational(rng, 0, 1, 32), hi = oracle::random_rational(rng, 0, 1, 32);
      if (lo > hi) std::swap(lo, hi);
      const RatInterval Y = image(*e, RatInterval(lo, hi));
      for (int k = 0; k <= 8; ++k) CHECK(Y.contains(oracle::evaluate(*e, lo + (hi - lo) * rat(k, 8))));
    }
  }

  TEST_CASE("continuity flag") {
    CHECK(is_continuous(*parse("abs(x - 1/2) + spike(1/3; 1/4)")));
    CHECK_FALSE(is_continuous(*parse("x + step(1/2; 0, 1)")));
    CHECK_FALSE(compile(parse("stair(1/2, 1)")).continuous);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("json reports round trip") {
    CliOptions o;
    o.fn = "x - 1/3";
    o.eps = "1/100";
    const RunReport r = run_command("root", o);
    CHECK(r.outcome == "Decided");
    CHECK(r.branch == "Root");
    CHECK(RunReport::from_json(r.to_json()) == r);
    CHECK(RunReport::from_json(json::parse(r.to_json().dump())) == r);
  }

  TEST_CASE("--json prints a single document") {
    std::ostringstream out, err;
    const int code = run_cli({"eval", "--fn", "x * x", "--at", "1/2", "--json"}, out, err);
    CHECK(code == 0);
    const std::string s = out.str();
    CHECK(std::count(s.begin(), s.end(), '\n') == 1);
    const json j = json::parse(s);
    CHECK(j.at("value").at("mid") == "1/4");
    CHECK(j.at("trace").at("queries").get<std::size_t>() >= 1);
  }

  TEST_CASE("eval without --at is reproducible from the seed") {
    CliOptions o;
    o.fn = "x";
    o.seed = 99;
    CHECK(run_command("eval", o).inputs.at("at") == run_command("eval", o).inputs.at("at"));
  }

  TEST_CASE("fixture oracle file drives the second trick") {
    const std::string path = "dichot_cli_oracle.json";
    {
      std::ofstream f(path);
      f << R"({"verdict": "AllZero"})";
    }
    std::ostringstream out, err;
    const int code = run_cli({"ishihara", "--fn", "step(1/2; 0, 1)", "--at", "1/2", "--beta", "1/4", "--oracle",
                              "fixture:" + path, "--json"},
                             out, err);
    std::remove(path.c_str());
    CHECK(code == 0);
    CHECK(json::parse(out.str()).at("branch") == "InfinitelyOften");
  }

  TEST_CASE("human output names the outcome") {
    std::ostringstream out, err;
    CHECK(run_cli({"root", "--fn", "x + 1"}, out, err) == 3);
    CHECK(out.str().find("PreconditionFailed") != std::string::npos);
  }
}
