#include "xorunify/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "xorunify/benchmarks.hpp"
#include "xorunify/parser.hpp"

namespace xorunify {

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Solved: return "solved";
    case RunStatus::Unsolvable: return "unsolvable";
    case RunStatus::Timeout: return "timeout";
    case RunStatus::Error: return "error";
  }
  return "error";
}

int exit_code(RunStatus s) {
  switch (s) {
    case RunStatus::Solved: return 0;
    case RunStatus::Unsolvable: return 1;
    case RunStatus::Error: return 2;
    case RunStatus::Timeout: return 3;
  }
  return 2;
}

RunReport run_problem(const std::string& problem_id, const UnificationProblem& p, const RunOptions& opts) {
  UnifyOptions uo;
  uo.vi_opt = opts.vi_opt;
  if (opts.timeout) {
    uo.timeout = std::chrono::duration<double>(*opts.timeout);
  } else {
    uo.timeout.reset();
  }
  uo.max_solutions = opts.max_solutions;

  const auto start = std::chrono::steady_clock::now();
  UnifierSet set = unify_e(p, uo);
  const auto stop = std::chrono::steady_clock::now();

  RunReport r;
  r.problem_id = problem_id;
  r.options = opts;
  r.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  for (const Substitution& s : set.unifiers) r.unifiers.push_back(render_substitution(s));
  r.unifier_count = r.unifiers.size();
  r.truncated = set.hit_max_solutions;
  if (set.timed_out) {
    r.status = RunStatus::Timeout;
  } else {
    r.status = r.unifier_count ? RunStatus::Solved : RunStatus::Unsolvable;
  }
  return r;
}

std::string report_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["problem_id"] = r.problem_id;
  j["unifier_count"] = r.unifier_count;
  j["unifiers"] = r.unifiers;
  j["elapsed"] = r.elapsed_ms;
  nlohmann::ordered_json o;
  o["vi_opt"] = r.options.vi_opt;
  o["timeout"] = r.options.timeout ? nlohmann::ordered_json(*r.options.timeout) : nlohmann::ordered_json(nullptr);
  o["max_solutions"] =
      r.options.max_solutions ? nlohmann::ordered_json(*r.options.max_solutions) : nlohmann::ordered_json(nullptr);
  j["options"] = o;
  j["status"] = to_string(r.status);
  return j.dump();
}

namespace {

std::string format_ms(double ms) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << ms;
  return s.str();
}

int solve(const std::string& path, const RunOptions& opts, bool json, std::ostream& out, std::ostream& err) {
  std::string text;
  std::string id = path;
  if (path == "-") {
    id = "stdin";
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) {
      err << "error: cannot open " << path << "\n";
      return 2;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  UnificationProblem p;
  try {
    p = parse_problem(text);
  } catch (const ParseError& e) {
    err << id << ":" << e.what() << "\n";
    if (json) {
      RunReport r;
      r.problem_id = id;
      r.options = opts;
      out << report_json(r) << "\n";
    }
    return 2;
  } catch (const MalformedTerm& e) {
    err << id << ": " << e.what() << "\n";
    return 2;
  }

  RunReport r = run_problem(id, p, opts);
  if (r.truncated) err << "note: stopped after --max-solutions " << *opts.max_solutions << " unifiers\n";
  if (json) {
    out << report_json(r) << "\n";
  } else {
    for (const auto& u : r.unifiers) out << u << "\n";
    out << "unifiers: " << r.unifier_count << "\n";
    out << "status: " << to_string(r.status) << "\n";
    out << "time: " << format_ms(r.elapsed_ms) << "ms\n";
  }
  return exit_code(r.status);
}

int bench(const std::string& suite, const RunOptions& base, bool json, std::ostream& out, std::ostream& err) {
  if (suite != "table1") {
    err << "error: unknown benchmark suite '" << suite << "' (available: table1)\n";
    return 2;
  }
  std::vector<bool> columns = base.vi_opt ? std::vector<bool>{true, false} : std::vector<bool>{false};
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  if (!json) out << std::left << std::setw(4) << "no" << std::setw(12) << "column" << std::setw(12) << "status"
                 << std::setw(8) << "size" << "time_ms\n";
  for (const BenchmarkProblem& bp : table1_problems()) {
    UnificationProblem p = parse_problem(bp.text);
    for (bool vi : columns) {
      RunOptions opts = base;
      opts.vi_opt = vi;
      RunReport r = run_problem("table1/" + std::to_string(bp.number), p, opts);
      if (json) {
        all.push_back(nlohmann::ordered_json::parse(report_json(r)));
      } else {
        out << std::left << std::setw(4) << bp.number << std::setw(12) << (vi ? "vi-opt" : "no-vi-opt")
            << std::setw(12) << to_string(r.status) << std::setw(8) << r.unifier_count << format_ms(r.elapsed_ms)
            << "\n";
      }
      out.flush();
    }
  }
  if (json) out << all.dump(2) << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unification modulo free symbols with inverse and XOR"};
  app.require_subcommand(1);

  bool no_vi_opt = false;
  bool json = false;
  double timeout = 300.0;
  std::size_t max_solutions = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--no-vi-opt", no_vi_opt, "Visit every variable identification (no pruning)");
    sub->add_flag("--json", json, "Emit machine-readable reports");
    sub->add_option("--timeout", timeout, "Time limit per problem in seconds (0 = none)")->check(CLI::NonNegativeNumber);
    sub->add_option("--max-solutions", max_solutions, "Stop after this many unifiers (0 = unlimited)");
  };

  std::string path;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve a problem file ('-' reads standard input)");
  solve_cmd->add_option("file", path, "Problem file")->required();
  add_common(solve_cmd);

  std::string suite;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run a built-in benchmark suite");
  bench_cmd->add_option("suite", suite, "Suite name (table1)")->required();
  add_common(bench_cmd);

  std::vector<const char*> argv{"xorunify"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  RunOptions opts;
  opts.vi_opt = !no_vi_opt;
  opts.timeout = timeout > 0 ? std::optional<double>(timeout) : std::nullopt;
  opts.max_solutions = max_solutions > 0 ? std::optional<std::size_t>(max_solutions) : std::nullopt;

  if (solve_cmd->parsed()) return solve(path, opts, json, out, err);
  return bench(suite, opts, json, out, err);
}

}  // namespace xorunify
