#pragma once

#include "dichot/interval.hpp"
#include "dichot/outcome.hpp"

#include <json.hpp>

#include <string>

namespace dichot {

using json = nlohmann::json;

/// Machine-readable result of one CLI run. Rationals are serialised as
/// "p/q" strings so the document is exact.
struct RunReport {
  struct Trace {
    std::size_t steps = 0;
    int deepest_precision = 0;
    std::size_t queries = 0;
    json detail = json::object();
    bool operator==(const Trace&) const = default;
  };

  std::string command;
  json inputs = json::object();
  std::string outcome;  ///< Decided, Exhausted, PreconditionFailed, InvalidExpression
  std::string branch;
  json value;
  json certificates = json::object();
  Trace trace;
  double seconds = 0;

  int exit_code() const;
  json to_json() const;
  static RunReport from_json(const json& j);
  std::string human() const;
  bool operator==(const RunReport&) const = default;
};

json rational_json(const Rational& q);
json interval_json(const RatInterval& I);
Rational rational_from_json(const json& j);
json exhausted_json(const Exhausted& e);

}  // namespace dichot
