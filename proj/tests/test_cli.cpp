#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "xorunify/cli.hpp"

using namespace xorunify;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_problem(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("xorunify_cli_test_" + name + ".txt");
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("solve a solvable problem") {
  std::string f = write_problem("p2", "z =? enc(pair(x, pair(y, x + y)), inv(z + u))\n");
  Run r = run({"solve", f});
  CHECK(r.code == 0);
  CHECK(r.out.find("unifiers: 1\n") != std::string::npos);
  CHECK(r.out.find("status: solved\n") != std::string::npos);
  CHECK(r.out.find("time: ") != std::string::npos);
  CHECK(r.out.find(":=") != std::string::npos);
}

TEST_CASE("solve an unsolvable problem") {
  std::string f = write_problem("p3", "z =? enc(pair(x, pair(y, x + y)), inv(z + a))\n");
  Run r = run({"solve", f});
  CHECK(r.code == 1);
  CHECK(r.out.find("unifiers: 0\n") != std::string::npos);
}

TEST_CASE("identity unifier") {
  Run r = run({"solve", write_problem("id", "x =? x\n")});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("{}\nunifiers: 1\n", 0) == 0);
}

TEST_CASE("parse errors exit with 2 and report a position") {
  Run r = run({"solve", write_problem("bad", "x =? a;\ny =? f(,)\n")});
  CHECK(r.code == 2);
  CHECK(r.err.find("2:") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"solve", "/nonexistent/problem.txt"}).code == 2);
  CHECK(run({"bench", "table9"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("json report has exactly the contract fields") {
  std::string f = write_problem("json", "z =? enc(pair(x, pair(y, x + y)), inv(z + u))\n");
  Run text = run({"solve", f});
  Run r = run({"solve", f, "--json", "--no-vi-opt", "--timeout", "10"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  std::set<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.insert(it.key());
  CHECK(keys == std::set<std::string>{"problem_id", "unifier_count", "unifiers", "elapsed", "options", "status"});
  CHECK(j["unifier_count"].get<std::size_t>() == j["unifiers"].size());
  CHECK(j["options"]["vi_opt"] == false);
  CHECK(j["options"]["timeout"] == 10.0);
  CHECK(j["options"]["max_solutions"].is_null());

  auto opt = nlohmann::json::parse(run({"solve", f, "--json"}).out);
  CHECK(opt["unifier_count"] == 1);
  CHECK(opt["status"] == "solved");
  CHECK(text.out.find("unifiers: 1") != std::string::npos);
}

TEST_CASE("timeout exits with 3") {
  std::string f = write_problem("slow", "0 =? pair(x1, y1) + pair(x2, y2) + pair(x3, y3) + pair(x4, y4) + "
                                        "pair(x5, y5) + pair(x6, y6) + pair(x7, y7) + pair(x8, y8)\n");
  Run r = run({"solve", f, "--timeout", "0.001"});
  CHECK(r.code == 3);
  CHECK(r.out.find("status: timeout") != std::string::npos);
}

TEST_CASE("max-solutions truncates") {
  std::string f = write_problem("max", "0 =? pair(x1, y1) + pair(x2, y2) + pair(x3, y3) + pair(x4, y4)\n");
  Run r = run({"solve", f, "--max-solutions", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("unifiers: 2\n") != std::string::npos);
}

TEST_CASE("report invariants") {
  RunReport rep;
  rep.status = RunStatus::Unsolvable;
  CHECK(exit_code(RunStatus::Solved) == 0);
  CHECK(exit_code(RunStatus::Unsolvable) == 1);
  CHECK(exit_code(RunStatus::Error) == 2);
  CHECK(exit_code(RunStatus::Timeout) == 3);
  CHECK(std::string(to_string(RunStatus::Timeout)) == "timeout");
}
