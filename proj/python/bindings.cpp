#include "dichot/cli.hpp"
#include "dichot/expr.hpp"
#include "dichot/ivt.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace dichot;

namespace {

// Options arrive as a plain dict of strings and ints; unknown keys are errors.
CliOptions options_from(const py::dict& d) {
  CliOptions o;
  for (const auto& [k, v] : d) {
    const std::string key = py::str(k);
    auto text = [&] { return py::str(v).cast<std::string>(); };
    if (key == "fn") o.fn = text();
    else if (key == "eps") o.eps = text();
    else if (key == "precision") o.precision = v.cast<int>();
    else if (key == "budget") o.budget = v.cast<int>();
    else if (key == "queries") o.queries = v.cast<std::size_t>();
    else if (key == "oracle") o.oracle = text();
    else if (key == "seed") o.seed = v.cast<std::uint64_t>();
    else if (key == "at") o.at = text();
    else if (key == "alpha") o.alpha = text();
    else if (key == "beta") o.beta = text();
    else if (key == "count") o.count = v.cast<std::size_t>();
    else if (key == "scan") o.scan = v.cast<std::size_t>();
    else throw py::key_error("unknown option '" + key + "'");
  }
  return o;
}

ExprPtr parse_or_raise(const std::string& text) {
  try {
    return parse(text);
  } catch (const InvalidExpression& e) {
    throw py::value_error(e.what());
  }
}

}  // namespace

PYBIND11_MODULE(_dichot, m) {
  m.doc() = "Exact-real dichotomy procedures (native part).";

  m.def(
      "run",
      [](const std::string& command, const py::dict& options) {
        const CliOptions o = options_from(options);
        py::gil_scoped_release release;
        return run_command(command, o).to_json().dump();
      },
      py::arg("command"), py::arg("options") = py::dict(),
      "Runs a subcommand and returns its report as a JSON string.");

  m.def(
      "canonical",
      [](const std::string& text) { return print(*parse_or_raise(text)); },
      "Fully parenthesised form of an expression.");

  m.def(
      "interpret",
      [](const std::string& text, const std::string& x) {
        return to_string(interpret(*parse_or_raise(text), parse_rational(x)));
      },
      "Exact value of an expression at a rational, as 'p/q'.");

  m.def(
      "enclose",
      [](const std::string& text, const std::string& x, int precision) {
        const Compiled c = compile(parse_or_raise(text));
        Budget b(Budget::kDefaultQueries, precision + 64);
        auto v = c.real.at(parse_rational(x), precision, b);
        if (!v) throw std::runtime_error("evaluation exhausted: " + v.diagnostics().reason);
        return std::make_pair(to_string(v->lo()), to_string(v->hi()));
      },
      py::arg("fn"), py::arg("x"), py::arg("precision") = 32,
      "Enclosure [lo, hi] of f(x) with width at most 2^-precision.");

  m.def(
      "is_continuous", [](const std::string& text) { return is_continuous(*parse_or_raise(text)); },
      "False when the expression contains step or stair.");

  m.def(
      "unit_rationals",
      [](std::size_t count) {
        const auto q = unit_rationals();
        std::vector<std::string> out;
        for (std::size_t i = 1; i <= count; ++i) out.push_back(to_string(q(i)));
        return out;
      },
      "First `count` terms of the enumeration of rationals in [0, 1].");
}
