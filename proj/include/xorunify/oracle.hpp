// Brute-force ground truth on bounded term universes.
//
// Nothing here calls the solvers; the only dependency is the term algebra.
#pragma once

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "xorunify/parser.hpp"
#include "xorunify/term.hpp"

namespace xorunify::oracle {

class UniverseTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct UniverseBounds {
  std::size_t max_depth = 1;
  std::size_t max_xor_width = 2;
  std::vector<std::string> constants;
  std::vector<std::string> variables;
  /// Free symbols of positive arity and/or inv.
  std::vector<Symbol> symbols;
  std::size_t cap = 100000;
};

struct TermUniverse {
  std::vector<Term> terms;
  UniverseBounds bounds;
};

/// Level 0 holds the constants and variables; level d adds every symbol
/// applied to level d-1 terms and every xor of 2..max_xor_width level d-1
/// terms (repetition allowed). Canonical, duplicate free, in discovery
/// order.
TermUniverse enum_universe(const UniverseBounds& bounds);

/// Bounds built from the free symbols and constants of a problem.
UniverseBounds bounds_for(const UnificationProblem& p, std::size_t depth, std::size_t width);

bool is_unifier(const Substitution& sigma, const UnificationProblem& p);

/// Is `target` (a binding for every variable of `domain`) an instance of
/// `general`, i.e. is there tau with x.general.tau = x.target for all x in
/// `domain`? Variables in `rigid` behave as constants. Values for variables
/// that can be read off the target directly are deduced; the others are
/// searched in `universe`.
bool is_instance(const Substitution& target, const Substitution& general, const std::set<std::string>& domain,
                 const std::set<std::string>& rigid, const std::vector<Term>& universe);

/// Calls `visit` for every assignment of `vars` into `universe` until it
/// returns false. Throws UniverseTooLarge above `cap` assignments.
void for_each_assignment(const std::vector<std::string>& vars, const std::vector<Term>& universe, std::size_t cap,
                         const std::function<bool(const Substitution&)>& visit);

struct CompletenessReport {
  bool covered = true;
  std::optional<Substitution> counterexample;
  std::size_t ground_solutions = 0;
};

/// Every ground unifier of `p` over `u` must be an instance of a member of
/// `found`.
CompletenessReport check_complete(const std::vector<Substitution>& found, const UnificationProblem& p,
                                  const TermUniverse& u, std::size_t cap = 2000000);

/// Every ground instance (over `u`) of every member of `from` is an instance
/// of some member of `to`.
CompletenessReport check_covers(const std::vector<Substitution>& from, const std::vector<Substitution>& to,
                                const std::set<std::string>& domain, const std::set<std::string>& rigid,
                                const TermUniverse& u, std::size_t cap = 2000000);

/// Independent rewriter: applies the axioms inv(inv(x)) -> x, x + 0 -> x,
/// x + x -> 0 and AC flattening/sorting step by step until nothing changes.
Term rewrite_to_fixpoint(const Term& t);

}  // namespace xorunify::oracle
