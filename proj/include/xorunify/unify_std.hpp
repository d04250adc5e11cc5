// Unification modulo inv(inv(x)) = x over free symbols.
#pragma once

#include <optional>
#include <vector>

#include "xorunify/parser.hpp"
#include "xorunify/term.hpp"

namespace xorunify {

/// Most general unifier of a system of std-pure canonical equations, or
/// nullopt when the system has no solution. The result is idempotent and
/// canonical. Variable-variable equations bind the lexicographically larger
/// name to the smaller one.
std::optional<Substitution> unify_std(const std::vector<Equation>& eqs);

}  // namespace xorunify
