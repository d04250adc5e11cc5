#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "xorunify/oracle.hpp"
#include "xorunify/unify_std.hpp"

using namespace xorunify;
using namespace xorunify::testing;

namespace {
std::optional<Substitution> solve(const std::string& text) { return unify_std(parse_problem(text).equations); }
}  // namespace

TEST_CASE("binding a variable") {
  auto s = solve("x =? enc(a, b)");
  REQUIRE(s);
  CHECK(*s == S({{"x", "enc(a, b)"}}));
}

TEST_CASE("inverse moves across the equation") {
  auto s = solve("inv(x) =? a");
  REQUIRE(s);
  CHECK(*s == S({{"x", "inv(a)"}}));
  CHECK(oracle::rewrite_to_fixpoint(Term::raw_inv(*s->find("x"))) == T("a"));
}

TEST_CASE("x = inv(x) has no solution") {
  CHECK_FALSE(solve("x =? inv(x)"));
  // Brute force over terms of depth <= 3 built from one constant and inv.
  oracle::UniverseBounds b;
  b.constants = {"a"};
  b.symbols = {Symbol::inv()};
  b.max_depth = 3;
  b.max_xor_width = 1;
  for (const Term& t : oracle::enum_universe(b).terms) CHECK_FALSE(eq_modulo_e(t, Term::inv(t)));
}

TEST_CASE("decomposition") {
  auto s = solve("pair(x, a) =? pair(b, y)");
  REQUIRE(s);
  CHECK(*s == S({{"x", "b"}, {"y", "a"}}));
  CHECK_FALSE(solve("pair(x, a) =? enc(b, y)"));
  CHECK_FALSE(solve("a =? b"));
  CHECK_FALSE(solve("x =? f(x)"));
}

TEST_CASE("inverse rules") {
  auto s = solve("inv(x) =? inv(pair(a, y))");
  REQUIRE(s);
  CHECK(*s == S({{"x", "pair(a, y)"}}));
  s = solve("inv(x) =? pair(a, b)");
  REQUIRE(s);
  CHECK(*s == S({{"x", "inv(pair(a, b))"}}));
  CHECK_FALSE(solve("inv(a) =? b"));
  s = solve("inv(x) =? y");
  REQUIRE(s);
  CHECK(s->size() == 1);
}

TEST_CASE("variable-variable bindings point to the smaller name") {
  auto s = solve("y =? x");
  REQUIRE(s);
  CHECK(*s == S({{"y", "x"}}));
}

TEST_CASE("result is idempotent and solves the system") {
  UnificationProblem p = parse_problem("x =? pair(y, z); y =? inv(z); z =? enc(a, w)");
  auto s = unify_std(p.equations);
  REQUIRE(s);
  CHECK(s->is_idempotent());
  CHECK(oracle::is_unifier(*s, p));
}

TEST_CASE("xor in a std system is a contract violation") {
  CHECK_THROWS_AS(solve("x =? a + b"), std::invalid_argument);
}
