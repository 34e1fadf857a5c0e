#include "dichot/cli.hpp"

#include "dichot/dichotomies.hpp"
#include "dichot/expr.hpp"
#include "dichot/ishihara.hpp"
#include "dichot/ivt.hpp"
#include "dichot/monotone.hpp"
#include "dichot/quasiconvex.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <ostream>
#include <random>

namespace dichot {

namespace {

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational rational_flag(const std::string& name, const std::string& text) {
  try {
    bool neg = !text.empty() && text[0] == '-';
    Rational q = parse_rational(neg ? std::string_view(text).substr(1) : std::string_view(text));
    return neg ? Rational(-q) : q;
  } catch (const std::invalid_argument&) {
    throw InvalidInput("--" + name + ": not a rational: '" + text + "'");
  }
}

OmniscienceOracle oracle_flag(const std::string& spec) {
  if (spec.rfind("bounded:", 0) == 0) {
    try {
      return bounded_search_oracle(std::stoul(spec.substr(8)));
    } catch (const std::exception&) {
      throw InvalidInput("--oracle: bad search bound in '" + spec + "'");
    }
  }
  if (spec.rfind("fixture:", 0) == 0) {
    std::ifstream in(spec.substr(8));
    if (!in) throw InvalidInput("--oracle: cannot read '" + spec.substr(8) + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw InvalidInput(std::string("--oracle: ") + e.what());
    }
    const std::string v = j.value("verdict", "");
    if (v == "AllZero") return fixture_oracle(Verdict::all_zero());
    if (v == "FirstOneAt") return fixture_oracle(Verdict::first_one_at(j.value("index", std::size_t{1})));
    if (v == "Unknown") return fixture_oracle(Verdict::unknown(j.value("index", std::size_t{0})));
    throw InvalidInput("--oracle: verdict must be AllZero, FirstOneAt or Unknown");
  }
  throw InvalidInput("--oracle: expected bounded:<N> or fixture:<file>");
}

const char* side_name(ApproachSide s) {
  switch (s) {
    case ApproachSide::FromLeft: return "left";
    case ApproachSide::FromRight: return "right";
    case ApproachSide::Mixed: return "mixed";
  }
  return "?";
}

void decided(RunReport& r, std::string branch) {
  r.outcome = "Decided";
  r.branch = std::move(branch);
}

template <typename T>
bool exhausted(RunReport& r, const Outcome<T>& o) {
  if (o) return false;
  r.outcome = "Exhausted";
  r.certificates = exhausted_json(o.diagnostics());
  return true;
}

void cmd_eval(RunReport& r, const CliOptions& o, const Compiled& c, Budget& b) {
  Rational x;
  if (!o.at.empty()) {
    x = rational_flag("at", o.at);
  } else {
    std::mt19937_64 rng(o.seed);
    x = make_rational(static_cast<long>(rng() % 1025), 1024);
  }
  r.inputs["at"] = rational_json(x);
  auto v = c.real.at(x, o.precision, b);
  if (exhausted(r, v)) return;
  decided(r, "Value");
  r.value = interval_json(*v);
  r.value["mid"] = rational_json(v->mid());
  r.certificates["width_bound"] = rational_json(pow2(-o.precision));
  r.trace.steps = 1;
}

void cmd_root(RunReport& r, const CliOptions& o, const Compiled& c, Budget& b) {
  const Rational eps = rational_flag("eps", o.eps);
  BisectionTrace trace;
  auto res = approx_root(c.real, eps, b, &trace);
  r.trace.steps = trace.steps.size();
  if (!trace.steps.empty()) {
    r.trace.detail["last_bracket"] = {rational_json(trace.steps.back().a), rational_json(trace.steps.back().b)};
    r.trace.detail["flipped"] = trace.flipped;
  }
  if (exhausted(r, res)) return;
  if (const auto* root = std::get_if<Root>(&*res)) {
    decided(r, "Root");
    r.value = {{"z", rational_json(root->point)}};
    r.certificates["value_bound"] = rational_json(root->value_bound);
    return;
  }
  const auto& ev = std::get<Stuck>(*res).evidence;
  decided(r, "Stuck");
  r.value = {{"z", rational_json(ev.z_point)}};
  r.certificates["gap_certificate"] = rational_json(ev.gap_certificate);
  r.certificates["resolution"] = rational_json(ev.resolution);
  r.certificates["approach_side"] = side_name(ev.side);
  json products = json::array();
  for (std::size_t i = ev.products.size() > 4 ? ev.products.size() - 4 : 0; i < ev.products.size(); ++i) {
    products.push_back({{"x", rational_json(ev.approach_points[i])}, {"product", interval_json(ev.products[i])}});
  }
  r.certificates["last_products"] = products;
}

void cmd_steps(RunReport& r, const CliOptions& o, const Compiled& c, Budget& b) {
  const Rational eps = rational_flag("eps", o.eps);
  auto res = eps_steps(MonotoneFn{c.real, Direction::Increasing}, eps, b);
  if (exhausted(r, res)) return;
  decided(r, "StepPartition");
  json pts = json::array();
  std::size_t candidates = 0;
  for (const auto& p : res->points) {
    const bool step = p.flag == StepPoint::Flag::StepCandidate;
    candidates += step;
    json e{{"x", rational_json(p.x)}, {"flag", step ? "StepCandidate" : "NearLevel"}, {"level", rational_json(p.level)},
           {"gap", rational_json(p.gap)}};
    if (step) e["bracket"] = {rational_json(p.bracket_lo), rational_json(p.bracket_hi)};
    pts.push_back(e);
  }
  r.value = {{"points", pts}};
  r.certificates["step_candidates"] = candidates;
  r.certificates["levels"] = res->levels.size();
  r.trace.steps = res->levels.size();
}

json entries_json(const std::vector<DiscontinuityEntry>& entries) {
  json out = json::array();
  for (const auto& e : entries) {
    if (const auto* p = std::get_if<DiscontinuityPoint>(&e)) {
      out.push_back({{"xi", rational_json(p->point)},
                     {"bracket", {rational_json(p->bracket_lo), rational_json(p->bracket_hi)}},
                     {"gap_lower", rational_json(p->gap_lower)},
                     {"level", p->level}});
    } else {
      out.push_back("*");
    }
  }
  return out;
}

void cmd_discont(RunReport& r, const CliOptions& o, const Compiled& c, Budget& b) {
  auto res = enumerate_discontinuities(MonotoneFn{c.real, Direction::Increasing}, o.count, b);
  if (exhausted(r, res)) return;
  decided(r, "DiscontinuityStream");
  r.value = {{"entries", entries_json(*res)}};
  r.certificates["points"] = count_points(*res);
  r.trace.steps = res->size();
}

void cmd_inf(RunReport& r, const CliOptions&, const ExprPtr& e, const Compiled& c, Budget& b) {
  InfTrace trace;
  const InfOracle inf = branch_and_bound_inf([e](const RatInterval& I) { return image(*e, I); });
  auto res = inf_dichotomy(c.real, inf, b, &trace);
  r.trace.steps = trace.steps.size();
  if (exhausted(r, res)) return;
  if (const auto* p = std::get_if<InfPositive>(&*res)) {
    decided(r, "InfPositive");
    r.value = {{"lower", rational_json(p->lower)}, {"witness", rational_json(p->witness_point)}};
    r.certificates["step"] = p->step;
    return;
  }
  const auto& z = std::get<InfZeroEvidence>(*res);
  decided(r, "InfZeroEvidence");
  json approach = json::array();
  for (std::size_t i = 0; i < z.approach_points.size() && i < 8; ++i) {
    approach.push_back({{"x", rational_json(z.approach_points[i])}, {"f", interval_json(z.approach_values[i])}});
  }
  r.value = {{"z", rational_json(z.z_point)}, {"f_z", interval_json(z.fz)}};
  r.certificates["approach"] = approach;
  r.certificates["resolution"] = rational_json(z.resolution);
}

void cmd_ishihara(RunReport& r, const CliOptions& o, const Compiled& c, Budget& b) {
  const Rational at = o.at.empty() ? Rational(0) : rational_flag("at", o.at);
  // From below unless that would leave [0, 1].
  const int sign = at > 0 ? -1 : 1;
  const ConvergentSeq xs = ConvergentSeq::dyadic_approach(at, sign);
  r.inputs["sequence"] = "x_n = " + to_string(at) + (sign > 0 ? " + " : " - ") + "2^-n";
  if (o.beta.empty()) throw InvalidInput("ishihara: --beta is required");
  const Rational beta = rational_flag("beta", o.beta);
  if (!o.alpha.empty()) {
    auto res = trick_one(c.real, xs, rational_flag("alpha", o.alpha), beta, b);
    if (exhausted(r, res)) return;
    if (const auto* w = std::get_if<WitnessAbove>(&*res)) {
      decided(r, "WitnessAbove");
      r.value = {{"n", w->n}};
      r.certificates["certified_gap"] = rational_json(w->certified_gap);
    } else {
      decided(r, "AllBelow");
      r.value = {{"beta", rational_json(std::get<AllBelow>(*res).beta)}};
    }
    return;
  }
  // Tail starts 2^(j-1) stay below half the depth, so every tested x_n is
  // resolvable at the budget's precision.
  TrickTwoOptions opts;
  opts.max_tails = 1;
  while ((std::size_t{1} << opts.max_tails) <= static_cast<std::size_t>(std::max(o.budget, 2) / 2)) ++opts.max_tails;
  r.inputs["tails"] = opts.max_tails;
  auto res = trick_two(c.real, xs, beta, oracle_flag(o.oracle), b, opts);
  if (exhausted(r, res)) return;
  if (const auto* e = std::get_if<EventuallyBelow>(&*res)) {
    decided(r, "EventuallyBelow");
    r.value = {{"n", e->n}};
    return;
  }
  const auto& io = std::get<InfinitelyOften>(*res);
  decided(r, "InfinitelyOften");
  json idx = json::array();
  for (const auto& f : io.evidence) idx.push_back(f.n);
  r.value = {{"indices", idx}};
  r.certificates["certified_gap"] = rational_json(io.certified_gap);
}

void cmd_neat(RunReport& r, const CliOptions& o, const Compiled& c, Budget& b) {
  const Rational eps = rational_flag("eps", o.eps);
  const auto grid = dyadic_enumeration();
  const RealFn f = c.real;
  const Budget limits(b.max_queries(), b.max_precision());
  // Dense points of f([0, 1]): f at the dyadic rationals.
  auto dense = [f, grid, limits](std::size_t i) {
    const ExactReal q = grid(i);
    return ExactReal([f, q, limits](int p) {
      Budget local = limits;
      auto v = f.eval(q, p, local);
      if (!v) throw EvaluationExhausted(v.diagnostics());
      return *v;
    });
  };
  r.inputs["set"] = "f([0, 1]) sampled at dyadic rationals";
  NeatOptions opts;
  opts.scan = o.scan;
  opts.max_centers = std::max<std::size_t>(o.count, 2);
  Outcome<NeatResult> res = [&]() -> Outcome<NeatResult> {
    try {
      return neat_dichotomy(dense, eps, b, opts);
    } catch (const EvaluationExhausted& e) {
      return e.diagnostics();
    }
  }();
  if (exhausted(r, res)) return;
  auto points_json = [](const std::vector<ExactReal>& pts) {
    json out = json::array();
    for (const auto& p : pts) out.push_back(rational_json(p.approx(16).mid()));
    return out;
  };
  if (const auto* fa = std::get_if<FiniteApprox>(&*res)) {
    decided(r, "FiniteApprox");
    r.value = {{"points", points_json(fa->points)}};
    r.certificates["scanned"] = fa->scanned;
    r.certificates["cover_radius"] = rational_json(eps);
    r.trace.steps = fa->scanned;
    return;
  }
  const auto& sep = std::get<SeparatedSeq>(*res);
  decided(r, "SeparatedSeq");
  r.value = {{"points", points_json(sep.points)}};
  r.certificates["pairwise_gap"] = rational_json(Rational(eps / 2));
  r.trace.steps = sep.points.size();
}

}  // namespace

RunReport run_command(const std::string& command, const CliOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  RunReport r;
  r.command = command;
  r.inputs = {{"fn", o.fn},     {"eps", o.eps},       {"precision", o.precision}, {"budget", o.budget},
              {"oracle", o.oracle}, {"seed", o.seed}, {"count", o.count}};
  if (!o.alpha.empty()) r.inputs["alpha"] = o.alpha;
  if (!o.beta.empty()) r.inputs["beta"] = o.beta;
  Budget b(o.queries, command == "eval" ? o.precision + 64 : o.budget);
  try {
    const ExprPtr e = parse(o.fn);
    r.inputs["fn_parsed"] = print(*e);
    const Compiled c = compile(e);
    if (command == "eval") {
      cmd_eval(r, o, c, b);
    } else if (command == "root") {
      cmd_root(r, o, c, b);
    } else if (command == "steps") {
      cmd_steps(r, o, c, b);
    } else if (command == "discont") {
      cmd_discont(r, o, c, b);
    } else if (command == "inf") {
      cmd_inf(r, o, e, c, b);
    } else if (command == "ishihara") {
      cmd_ishihara(r, o, c, b);
    } else if (command == "neat") {
      cmd_neat(r, o, c, b);
    } else {
      throw InvalidInput("unknown command '" + command + "'");
    }
  } catch (const InvalidExpression& e) {
    r.outcome = "InvalidExpression";
    r.certificates = {{"message", e.what()}, {"position", e.position()}, {"expected", e.expected()}};
  } catch (const InvalidInput& e) {
    r.outcome = "InvalidExpression";
    r.certificates = {{"message", e.what()}};
  } catch (const PreconditionFailed& e) {
    r.outcome = "PreconditionFailed";
    r.certificates = {{"kind", to_string(e.kind())}, {"message", e.what()}};
  } catch (const EvaluationExhausted& e) {
    r.outcome = "Exhausted";
    r.certificates = exhausted_json(e.diagnostics());
  } catch (const PrecisionLimitExceeded& e) {
    r.outcome = "Exhausted";
    r.certificates = {{"reason", e.what()}};
  }
  r.trace.queries = b.used();
  r.trace.deepest_precision = b.deepest();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision procedures for constructive dichotomies over exact reals"};
  app.require_subcommand(1);
  CliOptions o;
  bool as_json = false;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"eval", "evaluate f at a rational point"},
      {"root", "approximate root or discontinuity evidence"},
      {"steps", "eps-step partition of an increasing f"},
      {"discont", "enumerate discontinuities of an increasing f"},
      {"inf", "positive infimum or evidence that it is 0"},
      {"ishihara", "Ishihara's tricks along x_n = at + 2^-n"},
      {"neat", "finite approximation or separated sequence for f([0, 1])"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--fn", o.fn, "function expression in x");
    sub->add_option("--eps", o.eps, "tolerance (rational)");
    sub->add_option("--precision", o.precision, "output precision in bits");
    sub->add_option("--budget", o.budget, "bisection depth and precision cap");
    sub->add_option("--queries", o.queries, "query budget");
    sub->add_option("--oracle", o.oracle, "bounded:<N> or fixture:<file>");
    sub->add_flag("--json", as_json, "emit a JSON report");
    sub->add_option("--seed", o.seed, "seed for sampled inputs");
    sub->add_option("--at", o.at, "rational point");
    sub->add_option("--alpha", o.alpha, "lower threshold (ishihara, first trick)");
    sub->add_option("--beta", o.beta, "upper threshold (ishihara)");
    sub->add_option("--count", o.count, "stream prefix length / packing size");
    sub->add_option("--scan", o.scan, "dense points examined (neat)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  std::string command;
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();
  const RunReport r = run_command(command, o);
  if (as_json) {
    out << r.to_json().dump() << "\n";
  } else {
    out << r.human();
  }
  return r.exit_code();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("dichot");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace dichot
