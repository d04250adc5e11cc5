// Small conveniences shared by the test programs.
#pragma once

#include <initializer_list>
#include <string>
#include <utility>

#include "xorunify/parser.hpp"
#include "xorunify/term.hpp"

namespace xorunify::testing {

inline Term T(const std::string& text) { return parse_term(text, ParseOptions{.allow_reserved = true}); }

inline UnificationProblem P(const std::string& text) { return parse_problem(text); }

inline Substitution S(std::initializer_list<std::pair<const char*, const char*>> bindings) {
  Substitution s;
  for (const auto& [v, t] : bindings) s.bind(v, T(t));
  return s;
}

inline std::string R(const Term& t) { return render_term(t); }
inline std::string R(const Substitution& s) { return render_substitution(s); }

}  // namespace xorunify::testing
