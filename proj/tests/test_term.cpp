#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "xorunify/oracle.hpp"

using namespace xorunify;
using namespace xorunify::testing;

TEST_CASE("normalize removes double inverses and cancels xor summands") {
  CHECK(normalize(Term::raw_inv(Term::raw_inv(Term::constant("a")))) == Term::constant("a"));
  Term b = Term::constant("b"), c = Term::constant("c");
  CHECK(normalize(Term::raw_xor({b, c, c, Term::zero()})) == b);
  Term x = Term::var("x");
  CHECK(normalize(Term::raw_xor({x, x})) == Term::zero());
}

TEST_CASE("normalize agrees with step-wise axiom rewriting") {
  Term a = Term::constant("a"), b = Term::constant("b"), k = Term::constant("k");
  Term raw = Term::raw(Symbol::free("enc", 2), {Term::raw_xor({a, Term::raw_xor({b, a})}), k});
  Term expected = oracle::rewrite_to_fixpoint(raw);
  CHECK(normalize(raw) == expected);
  CHECK(R(normalize(raw)) == "enc(b, k)");
}

TEST_CASE("normalize flattens nested sums and sorts children") {
  Term x = Term::var("x"), a = Term::constant("a"), b = Term::constant("b");
  Term t = normalize(Term::raw_xor({b, Term::raw_xor({x, a})}));
  REQUIRE(t.is_xor());
  REQUIRE(t.args().size() == 3);
  CHECK(t.arg(0) == x);  // variables sort before applications
  CHECK(t.arg(1) == a);
  CHECK(t.arg(2) == b);
}

TEST_CASE("normalize rejects inconsistent arities") {
  Term a = Term::constant("a");
  Term t = Term::raw(Symbol::free("pair", 2), {Term::raw(Symbol::free("f", 1), {a}), Term::raw(Symbol::free("f", 2), {a, a})});
  CHECK_THROWS_AS(normalize(t), MalformedTerm);
  CHECK_THROWS_AS(normalize(Term::raw(Symbol::inv(), {a, a})), MalformedTerm);
}

TEST_CASE("canonical constructors") {
  Term a = Term::constant("a");
  CHECK(Term::inv(Term::inv(a)) == a);
  CHECK(Term::xor_of({a}) == a);
  CHECK(Term::xor_of({}) == Term::zero());
  CHECK(Term::xor_of({a, a}) == Term::zero());
  CHECK(Term::inv(Term::zero()).is_inv());
}

TEST_CASE("eq_modulo_e") {
  CHECK(eq_modulo_e(T("a + b"), T("b + a")));
  CHECK(eq_modulo_e(Term::raw_inv(Term::raw_inv(Term::var("x"))), Term::var("x")));
  CHECK_FALSE(eq_modulo_e(T("a"), T("b")));
  CHECK(eq_modulo_e(Term::raw_xor({T("a"), Term::raw_xor({T("b"), T("a")})}), T("b")));
}

TEST_CASE("total order on terms") {
  CHECK(T("z") < T("a"));
  CHECK(T("x") < T("y"));
  CHECK(T("a") < T("b"));
  CHECK(T("f(b)") < T("g(a)"));
  CHECK(T("f(a)") < T("f(a, a)"));
  CHECK(T("f(a, b)") < T("f(b, a)"));
  CHECK(compare(T("pair(x, a)"), T("pair(x, a)")) == std::strong_ordering::equal);
}

TEST_CASE("variables and occurrence") {
  Term t = T("enc(pair(y, x), inv(x + z))");
  CHECK(t.vars() == std::set<std::string>{"x", "y", "z"});
  std::vector<std::string> order;
  t.vars_in_order(order);
  CHECK(order == std::vector<std::string>{"y", "x", "z"});
  CHECK(t.occurs("z"));
  CHECK_FALSE(t.occurs("u"));
}

TEST_CASE("apply_subst normalizes the result") {
  CHECK(apply_subst(S({{"x", "a + b"}}), T("x + b")) == T("a"));
  CHECK(apply_subst(S({{"x", "inv(y)"}}), T("inv(x)")) == T("y"));
  CHECK(apply_subst(Substitution{}, T("enc(x, k)")) == T("enc(x, k)"));
}

TEST_CASE("compose applies the second substitution to the first") {
  CHECK(compose(S({{"x", "pair(y, a)"}}), S({{"y", "b"}})) == S({{"x", "pair(b, a)"}, {"y", "b"}}));
  Substitution r = compose(S({{"x", "y + z"}}), S({{"z", "y"}}));
  CHECK(r == S({{"x", "0"}, {"z", "y"}}));
  CHECK(compose(Substitution{}, Substitution{}).empty());
  CHECK_THROWS_AS(compose(S({{"x", "y"}}), S({{"y", "f(x)"}})), CompositionCycle);
}

TEST_CASE("resolve turns triangular bindings idempotent") {
  Substitution tri = S({{"x", "pair(y, a)"}, {"y", "inv(z)"}});
  Substitution r = resolve(tri);
  CHECK(r.is_idempotent());
  CHECK(*r.find("x") == T("pair(inv(z), a)"));
  CHECK_THROWS_AS(resolve(S({{"x", "f(y)"}, {"y", "g(x)"}})), CompositionCycle);
}

TEST_CASE("substitution bookkeeping") {
  Substitution s;
  s.bind("x", T("x"));
  CHECK(s.empty());  // identity bindings are dropped
  s.bind("x", Term::raw_inv(Term::raw_inv(T("y"))));
  CHECK(*s.find("x") == T("y"));
  CHECK(s.range_vars() == std::set<std::string>{"y"});
  CHECK(s.is_idempotent());
  CHECK_FALSE(S({{"x", "f(y)"}, {"y", "a"}}).is_idempotent());
}

TEST_CASE("fresh names use the reserved prefix") {
  FreshNames f;
  std::string a = f.next(), b = f.next();
  CHECK(a != b);
  CHECK(FreshNames::is_reserved(a));
  CHECK_FALSE(FreshNames::is_reserved("x"));
}
