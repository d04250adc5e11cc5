#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <chrono>
#include <sstream>

#include "xorunify/benchmarks.hpp"
#include "xorunify/cli.hpp"
#include "xorunify/combine.hpp"
#include "xorunify/oracle.hpp"
#include "xorunify/parser.hpp"
#include "xorunify/unify_acun.hpp"
#include "xorunify/unify_std.hpp"

namespace py = pybind11;
using namespace xorunify;

namespace {

using Bindings = std::map<std::string, std::string>;

Bindings to_dict(const Substitution& s) {
  Bindings out;
  for (const auto& [v, t] : s) out.emplace(v, render_term(t));
  return out;
}

Substitution from_dict(const Bindings& d) {
  Substitution s;
  for (const auto& [v, t] : d) s.bind(v, parse_term(t, ParseOptions{.allow_reserved = true}));
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Unification modulo free symbols, an involutive inverse and XOR";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<MalformedTerm>(m, "MalformedTerm", PyExc_ValueError);

  m.def(
      "normalize", [](const std::string& term) { return render_term(parse_term(term)); }, py::arg("term"),
      "Canonical form of a term, rendered back to text.");
  m.def(
      "eq_modulo_e", [](const std::string& s, const std::string& t) { return eq_modulo_e(parse_term(s), parse_term(t)); },
      py::arg("s"), py::arg("t"));
  m.def(
      "parse_problem",
      [](const std::string& text) {
        std::vector<std::pair<std::string, std::string>> eqs;
        for (const Equation& e : parse_problem(text).equations) eqs.emplace_back(render_term(e.lhs), render_term(e.rhs));
        return eqs;
      },
      py::arg("text"), "Normalized equations as (lhs, rhs) pairs.");

  m.def(
      "unify",
      [](const std::string& text, bool vi_opt, std::optional<double> timeout, std::optional<std::size_t> max_solutions) {
        UnifyOptions o;
        o.vi_opt = vi_opt;
        if (timeout) {
          o.timeout = std::chrono::duration<double>(*timeout);
        } else {
          o.timeout.reset();
        }
        o.max_solutions = max_solutions;
        UnificationProblem p = parse_problem(text);
        UnifierSet r;
        {
          py::gil_scoped_release release;
          r = unify_e(p, o);
        }
        py::dict out;
        std::vector<Bindings> unifiers;
        for (const auto& s : r.unifiers) unifiers.push_back(to_dict(s));
        out["unifiers"] = unifiers;
        out["timed_out"] = r.timed_out;
        out["hit_max_solutions"] = r.hit_max_solutions;
        out["partitions_visited"] = r.partitions_visited;
        out["partitions_succeeded"] = r.partitions_succeeded;
        return out;
      },
      py::arg("text"), py::arg("vi_opt") = true, py::arg("timeout") = 300.0, py::arg("max_solutions") = py::none(),
      "Complete set of unifiers of a problem in the text grammar.");

  m.def(
      "unify_std",
      [](const std::string& text) -> std::optional<Bindings> {
        auto s = unify_std(parse_problem(text).equations);
        if (!s) return std::nullopt;
        return to_dict(*s);
      },
      py::arg("text"), "Most general unifier of a problem without XOR, or None.");
  m.def(
      "solve_acun",
      [](const std::string& text) -> std::optional<Bindings> {
        auto sys = to_gf2_system(parse_problem(text).equations, {}, LinearOrder{});
        auto s = solve_acun(sys);
        if (!s) return std::nullopt;
        return to_dict(*s);
      },
      py::arg("text"), "Most general unifier of a pure XOR problem, or None.");

  m.def(
      "is_unifier",
      [](const Bindings& sigma, const std::string& text) { return oracle::is_unifier(from_dict(sigma), parse_problem(text)); },
      py::arg("sigma"), py::arg("text"));
  m.def(
      "check_complete",
      [](const std::vector<Bindings>& found, const std::string& text, std::size_t depth, std::size_t width) {
        UnificationProblem p = parse_problem(text);
        std::vector<Substitution> subs;
        for (const auto& d : found) subs.push_back(from_dict(d));
        oracle::UniverseBounds b = oracle::bounds_for(p, depth, width);
        if (b.constants.empty()) b.constants.push_back("c");
        auto rep = oracle::check_complete(subs, p, oracle::enum_universe(b));
        py::dict out;
        out["covered"] = rep.covered;
        out["ground_solutions"] = rep.ground_solutions;
        out["counterexample"] = rep.counterexample ? py::cast(to_dict(*rep.counterexample)) : py::none();
        return out;
      },
      py::arg("found"), py::arg("text"), py::arg("depth") = 1, py::arg("width") = 2,
      "Brute-force check that every bounded ground unifier is an instance of a member of `found`.");

  m.def("table1_problems", [] {
    std::vector<std::tuple<int, std::string, std::size_t>> out;
    for (const auto& bp : table1_problems()) out.emplace_back(bp.number, bp.text, bp.expected_size);
    return out;
  });
  m.def("pair_sum_problem", &pair_sum_problem, py::arg("n"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return std::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line front end; returns (exit_code, stdout, stderr).");
}
