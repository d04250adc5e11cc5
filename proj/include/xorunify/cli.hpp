// Command-line front end.
//
//   xorunify solve <file|->      solve one problem file
//   xorunify bench table1        run the built-in benchmark table
//
// Flags: --no-vi-opt, --json, --timeout <secs>, --max-solutions <n>.
// Exit codes: 0 solved, 1 unsolvable, 2 parse or usage error, 3 timeout.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "xorunify/combine.hpp"

namespace xorunify {

enum class RunStatus { Solved, Unsolvable, Timeout, Error };

const char* to_string(RunStatus s);

struct RunOptions {
  bool vi_opt = true;
  /// Seconds; unset means no limit.
  std::optional<double> timeout = 300.0;
  std::optional<std::size_t> max_solutions;
};

struct RunReport {
  std::string problem_id;
  std::size_t unifier_count = 0;
  std::vector<std::string> unifiers;
  double elapsed_ms = 0;
  RunOptions options;
  RunStatus status = RunStatus::Error;
  /// Stopped at --max-solutions; not part of the JSON contract.
  bool truncated = false;
};

RunReport run_problem(const std::string& problem_id, const UnificationProblem& p, const RunOptions& opts);

/// The report as a JSON object with exactly the fields problem_id,
/// unifier_count, unifiers, elapsed, options, status.
std::string report_json(const RunReport& r);

int exit_code(RunStatus s);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xorunify
