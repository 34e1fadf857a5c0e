#pragma once

#include "dichot/report.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace dichot {

/// Runs one CLI invocation (argv[0] is the program name) and returns the exit
/// code: 0 decided, 2 exhausted, 3 precondition failed, 4 invalid expression
/// or input, 1 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The report a subcommand produces, without printing.
struct CliOptions {
  std::string fn = "x";
  std::string eps = "1/10";
  int precision = 20;
  int budget = 40;
  std::size_t queries = 2'000'000;
  std::string oracle = "bounded:64";
  std::uint64_t seed = 0;
  std::string at;
  std::string alpha;
  std::string beta;
  std::size_t count = 32;
  std::size_t scan = 1024;
};

RunReport run_command(const std::string& command, const CliOptions& options);

}  // namespace dichot
