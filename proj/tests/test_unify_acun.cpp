#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "xorunify/oracle.hpp"
#include "xorunify/unify_acun.hpp"

using namespace xorunify;
using namespace xorunify::testing;

namespace {
std::vector<Equation> eqs(const std::string& text) { return parse_problem(text).equations; }
constexpr auto A = TheoryIndex::Acun;
constexpr auto Sd = TheoryIndex::Std;
}  // namespace

TEST_CASE("linear order") {
  LinearOrder o({"y", "x"});
  CHECK(o.less("y", "x"));
  CHECK_FALSE(o.less("x", "y"));
  CHECK(o.rank("x") == 1);
  CHECK_THROWS_AS(o.rank("z"), ContractViolation);
  CHECK_THROWS_AS(LinearOrder({"x", "x"}), ContractViolation);
}

TEST_CASE("bit rows") {
  BitRow r(130);
  CHECK_FALSE(r.any());
  r.flip(129);
  CHECK(r.test(129));
  BitRow s(130);
  s.flip(129);
  r ^= s;
  CHECK_FALSE(r.any());
}

TEST_CASE("system of unknowns and a constant") {
  GF2System sys = to_gf2_system(eqs("x + y =? a"), {}, LinearOrder{});
  REQUIRE(sys.rows.size() == 1);
  for (const char* n : {"x", "y", "a"}) {
    auto c = sys.column_of(n);
    REQUIRE(c);
    CHECK(sys.rows[0].test(*c));
  }
  CHECK(sys.columns[*sys.column_of("x")].kind == ColumnKind::Unknown);
  CHECK(sys.columns[*sys.column_of("a")].kind == ColumnKind::Constant);
}

TEST_CASE("trivial equations vanish") {
  CHECK(to_gf2_system(eqs("x =? x"), {}, LinearOrder{}).rows.empty());
}

TEST_CASE("restricted atoms") {
  GF2System sys = to_gf2_system(eqs("u =? y + b"), {{"u", A}, {"y", Sd}}, LinearOrder({"y", "u"}));
  REQUIRE(sys.rows.size() == 1);
  CHECK(sys.columns[*sys.column_of("u")].kind == ColumnKind::Unknown);
  CHECK(sys.columns[*sys.column_of("y")].kind == ColumnKind::Restricted);
  CHECK(sys.columns[*sys.column_of("b")].kind == ColumnKind::Constant);
  // Columns: unknowns, then shared variables descending, then constants.
  CHECK(sys.columns.back().name == "b");
}

TEST_CASE("non-pure input is rejected") {
  CHECK_THROWS_AS(to_gf2_system(eqs("x =? pair(a, b) + y"), {}, LinearOrder{}), ContractViolation);
  CHECK_THROWS_AS(to_gf2_system(eqs("x =? y"), {{"x", A}}, LinearOrder{}), ContractViolation);
}

TEST_CASE("solution respecting the order") {
  LinearOrder o({"y", "x"});
  GF2System sys = to_gf2_system(eqs("x + y + a =? 0"), {{"x", A}, {"y", A}}, o);
  auto s = solve_acun_lcr(sys, o);
  REQUIRE(s);
  CHECK(*s == S({{"x", "y + a"}}));

  // Every solution over sums of {a, y} is an instance of it.
  oracle::UniverseBounds b;
  b.constants = {"a"};
  b.variables = {"y"};
  b.max_xor_width = 2;
  auto u = oracle::enum_universe(b);
  UnificationProblem p = parse_problem("x + y + a =? 0");
  auto report = oracle::check_complete({*s}, p, u);
  CHECK(report.covered);
  CHECK(report.ground_solutions > 0);
}

TEST_CASE("restricted atom above the unknown blocks the solution") {
  LinearOrder o({"x", "y"});
  GF2System sys = to_gf2_system(eqs("x + y =? 0"), {{"x", A}, {"y", Sd}}, o);
  CHECK_FALSE(solve_acun_lcr(sys, o));
  // Unrestricted, x := y is the solution.
  auto free = solve_acun(sys);
  REQUIRE(free);
  CHECK(*free == S({{"x", "y"}}));
}

TEST_CASE("constant-only systems") {
  CHECK(solve_acun_lcr(to_gf2_system(eqs("a + a =? 0"), {}, LinearOrder{}), LinearOrder{}) == Substitution{});
  CHECK_FALSE(solve_acun_lcr(to_gf2_system(eqs("a + b =? 0"), {}, LinearOrder{}), LinearOrder{}));
  CHECK_FALSE(solve_acun(to_gf2_system(eqs("a =? b"), {}, LinearOrder{})));
}

TEST_CASE("elimination over several rows") {
  UnificationProblem p = parse_problem("x + y =? a; y + z =? b; x + z =? a + b");
  GF2System sys = to_gf2_system(p.equations, {}, LinearOrder{});
  auto s = solve_acun(sys);
  REQUIRE(s);
  CHECK(oracle::is_unifier(*s, p));
  CHECK(s->size() == 2);  // one free unknown remains
  UnificationProblem q = parse_problem("x + y =? a; y + z =? b; x + z =? a");
  CHECK_FALSE(solve_acun(to_gf2_system(q.equations, {}, LinearOrder{})));
}
