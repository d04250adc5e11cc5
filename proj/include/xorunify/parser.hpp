// Textual problem format.
//
//   problem := eq (";" eq)* [";"]
//   eq      := term "=?" term
//   term    := atom ("+" atom)*
//   atom    := ident | ident "(" term ("," term)* ")" | "0" | "(" term ")"
//
// Whitespace is insignificant and "#" starts a comment running to the end of
// the line. "+" is xor; "xor(...)" with at least two arguments is an alias.
// Identifiers x, y, z, u, v, w (optionally followed by digits) and anything
// starting with "V_" are variables; "inv", "pair" and "enc" are builtin; all
// other identifiers are free symbols.
#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xorunify/term.hpp"

namespace xorunify {

struct Equation {
  Term lhs;
  Term rhs;
  friend bool operator==(const Equation&, const Equation&) = default;
};

struct UnificationProblem {
  std::vector<Equation> equations;
  std::set<Symbol> signature;
  std::set<std::string> problem_vars;

  /// Builds a problem from already constructed terms: normalizes them and
  /// fills in the signature and variable set.
  static UnificationProblem from_equations(std::vector<Equation> eqs);
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct ParseOptions {
  /// Accept identifiers under the reserved fresh-variable prefix as
  /// variables. Off for user input.
  bool allow_reserved = false;
};

bool is_variable_name(std::string_view ident);

UnificationProblem parse_problem(std::string_view text, const ParseOptions& opts = {});
Term parse_term(std::string_view text, const ParseOptions& opts = {});

std::string render_term(const Term& t);
std::string render_equation(const Equation& eq);
std::string render_problem(const UnificationProblem& p);
/// "x := t; y := s", or "{}" for the identity.
std::string render_substitution(const Substitution& sigma);

}  // namespace xorunify
