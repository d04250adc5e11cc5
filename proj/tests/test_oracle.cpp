#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "xorunify/oracle.hpp"

using namespace xorunify;
using namespace xorunify::testing;
using namespace xorunify::oracle;

namespace {
std::set<Term> as_set(const TermUniverse& u) { return {u.terms.begin(), u.terms.end()}; }
}  // namespace

TEST_CASE("universe with one constant and inverse") {
  UniverseBounds b;
  b.constants = {"a"};
  b.symbols = {Symbol::inv()};
  TermUniverse u = enum_universe(b);
  CHECK(as_set(u) == std::set<Term>{T("a"), T("0"), T("inv(a)")});
  CHECK(u.terms.size() == 3);
}

TEST_CASE("universe with two constants and no symbols") {
  UniverseBounds b;
  b.constants = {"a", "b"};
  CHECK(as_set(enum_universe(b)) == std::set<Term>{T("a"), T("b"), T("0"), T("a + b")});
}

TEST_CASE("universe with one variable") {
  UniverseBounds b;
  b.variables = {"x"};
  CHECK(as_set(enum_universe(b)) == std::set<Term>{T("x"), T("0")});
}

TEST_CASE("universe growth and cap") {
  UniverseBounds b;
  b.constants = {"a", "b"};
  b.symbols = {Symbol::free("pair", 2), Symbol::inv()};
  b.max_depth = 2;
  b.max_xor_width = 2;
  TermUniverse u = enum_universe(b);
  CHECK(u.terms.size() > 20);
  for (const Term& t : u.terms) CHECK(normalize(t) == t);
  CHECK(std::set<Term>(u.terms.begin(), u.terms.end()).size() == u.terms.size());
  b.cap = 10;
  CHECK_THROWS_AS(enum_universe(b), UniverseTooLarge);
}

TEST_CASE("bounds_for reads the problem signature") {
  UniverseBounds b = bounds_for(P("x =? enc(a, inv(y))"), 2, 3);
  CHECK(b.constants == std::vector<std::string>{"a"});
  CHECK(b.max_depth == 2);
  CHECK(b.max_xor_width == 3);
  CHECK(std::find(b.symbols.begin(), b.symbols.end(), Symbol::free("enc", 2)) != b.symbols.end());
  CHECK(std::find(b.symbols.begin(), b.symbols.end(), Symbol::inv()) != b.symbols.end());
}

TEST_CASE("is_unifier") {
  CHECK(is_unifier(S({{"x", "a"}}), P("x =? a")));
  CHECK(is_unifier(S({{"x", "a + b"}}), P("x + a =? b")));
  CHECK_FALSE(is_unifier(Substitution{}, P("a =? b")));
  CHECK(is_unifier(S({{"x", "inv(a)"}}), P("inv(x) =? a")));
}

TEST_CASE("is_instance") {
  std::vector<Term> u = {T("a"), T("b"), T("0"), T("a + b")};
  CHECK(is_instance(S({{"x", "pair(a, a)"}, {"y", "a"}}), S({{"x", "pair(y, y)"}}), {"x", "y"}, {}, u));
  CHECK_FALSE(is_instance(S({{"x", "pair(a, b)"}, {"y", "a"}}), S({{"x", "pair(y, y)"}}), {"x", "y"}, {}, u));
  CHECK(is_instance(S({{"x", "b"}, {"y", "a + b"}}), S({{"x", "y + a"}}), {"x", "y"}, {}, u));
  CHECK_FALSE(is_instance(S({{"x", "b"}, {"y", "b"}}), S({{"x", "y + a"}}), {"x", "y"}, {}, u));
  // A rigid variable cannot be instantiated.
  CHECK_FALSE(is_instance(S({{"x", "a"}}), Substitution{}, {"x"}, {"x"}, u));
  CHECK(is_instance(S({{"x", "a"}}), Substitution{}, {"x"}, {}, u));
}

TEST_CASE("check_complete") {
  UniverseBounds b;
  b.constants = {"a"};
  TermUniverse ua = enum_universe(b);
  CHECK(check_complete({S({{"x", "a"}})}, P("x =? a"), ua).covered);

  CompletenessReport r = check_complete({}, P("x + y =? 0"), ua);
  CHECK_FALSE(r.covered);
  REQUIRE(r.counterexample);
  CHECK(is_unifier(*r.counterexample, P("x + y =? 0")));

  b.constants = {"a", "b"};
  TermUniverse uab = enum_universe(b);
  r = check_complete({S({{"x", "y + a"}})}, P("x + y =? a"), uab);
  CHECK(r.covered);
  CHECK(r.ground_solutions == uab.terms.size());

  // An instance is not complete for the general problem.
  CHECK_FALSE(check_complete({S({{"x", "a"}, {"y", "0"}})}, P("x + y =? a"), uab).covered);
}

TEST_CASE("check_covers") {
  UniverseBounds b;
  b.constants = {"a", "b"};
  TermUniverse u = enum_universe(b);
  std::vector<Substitution> general{S({{"x", "y"}})};
  std::vector<Substitution> special{S({{"x", "a"}, {"y", "a"}})};
  CHECK(check_covers(special, general, {"x", "y"}, {}, u).covered);
  CHECK_FALSE(check_covers(general, special, {"x", "y"}, {}, u).covered);
}

TEST_CASE("enumeration cap") {
  std::vector<Term> u(50, T("a"));
  CHECK_THROWS_AS(for_each_assignment({"x", "y", "z", "w"}, u, 1000, [](const Substitution&) { return true; }),
                  UniverseTooLarge);
  std::size_t n = 0;
  for_each_assignment({"x", "y"}, {T("a"), T("b")}, 100, [&](const Substitution&) { return ++n < 3; });
  CHECK(n == 3);
}

TEST_CASE("rewrite_to_fixpoint") {
  CHECK(rewrite_to_fixpoint(Term::raw_inv(Term::raw_inv(T("a")))) == T("a"));
  CHECK(rewrite_to_fixpoint(Term::raw_xor({T("b"), T("c"), T("c"), Term::zero()})) == T("b"));
  CHECK(rewrite_to_fixpoint(Term::raw_xor({T("x"), T("x")})) == Term::zero());
  Term messy = Term::raw(Symbol::free("f", 1), {Term::raw_xor({Term::raw_xor({T("c"), T("a")}), T("b")})});
  CHECK(rewrite_to_fixpoint(messy) == normalize(messy));
}
