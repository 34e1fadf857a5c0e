#include "dichot/report.hpp"

#include <sstream>

namespace dichot {

json rational_json(const Rational& q) { return to_string(q); }

json interval_json(const RatInterval& I) { return json{{"lo", to_string(I.lo())}, {"hi", to_string(I.hi())}}; }

Rational rational_from_json(const json& j) { return parse_rational(j.get<std::string>()); }

json exhausted_json(const Exhausted& e) {
  json j{{"queries", e.queries}, {"deepest_precision", e.deepest_precision}, {"reason", e.reason}};
  j["last_candidate"] = e.last_candidate ? interval_json(*e.last_candidate) : json(nullptr);
  return j;
}

int RunReport::exit_code() const {
  if (outcome == "Decided") return 0;
  if (outcome == "Exhausted") return 2;
  if (outcome == "PreconditionFailed") return 3;
  if (outcome == "InvalidExpression") return 4;
  return 1;
}

json RunReport::to_json() const {
  return json{{"command", command},
              {"inputs", inputs},
              {"outcome", outcome},
              {"branch", branch},
              {"value", value},
              {"certificates", certificates},
              {"trace",
               {{"steps", trace.steps},
                {"deepest_precision", trace.deepest_precision},
                {"queries", trace.queries},
                {"detail", trace.detail}}},
              {"timing", {{"seconds", seconds}}}};
}

RunReport RunReport::from_json(const json& j) {
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  r.outcome = j.at("outcome").get<std::string>();
  r.branch = j.at("branch").get<std::string>();
  r.value = j.at("value");
  r.certificates = j.at("certificates");
  const json& t = j.at("trace");
  r.trace.steps = t.at("steps").get<std::size_t>();
  r.trace.deepest_precision = t.at("deepest_precision").get<int>();
  r.trace.queries = t.at("queries").get<std::size_t>();
  r.trace.detail = t.at("detail");
  r.seconds = j.at("timing").at("seconds").get<double>();
  return r;
}

std::string RunReport::human() const {
  std::ostringstream out;
  out << command << ": " << outcome;
  if (!branch.empty()) out << " / " << branch;
  out << "\n";
  if (!value.is_null()) out << "  value: " << value.dump() << "\n";
  if (!certificates.empty()) out << "  certificates: " << certificates.dump() << "\n";
  out << "  trace: " << trace.steps << " steps, " << trace.queries << " queries, deepest precision "
      << trace.deepest_precision << "\n";
  out << "  time: " << seconds << " s\n";
  return out.str();
}

}  // namespace dichot
