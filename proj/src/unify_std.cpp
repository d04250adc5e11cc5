#include "xorunify/unify_std.hpp"

#include <deque>
#include <stdexcept>

namespace xorunify {

namespace {

void require_std_pure(const Term& t) {
  if (t.is_var()) return;
  if (t.acun_rooted()) throw std::invalid_argument("unify_std: xor/0 in std-pure equation");
  for (const Term& a : t.args()) require_std_pure(a);
}

// sigma stays idempotent: `value` contains no bound variable and `var` is
// unbound, so substituting into the existing ranges cannot create cycles.
void extend(Substitution& sigma, const std::string& var, const Term& value) {
  Substitution step;
  step.bind(var, value);
  Substitution::Map next;
  for (const auto& [v, t] : sigma) next.emplace(v, t.occurs(var) ? apply_subst(step, t) : t);
  next.emplace(var, value);
  sigma = Substitution(std::move(next));
}

}  // namespace

std::optional<Substitution> unify_std(const std::vector<Equation>& eqs) {
  std::deque<std::pair<Term, Term>> work;
  for (const Equation& e : eqs) {
    require_std_pure(e.lhs);
    require_std_pure(e.rhs);
    work.emplace_back(e.lhs, e.rhs);
  }

  Substitution sigma;
  while (!work.empty()) {
    auto [s, t] = std::move(work.front());
    work.pop_front();
    s = apply_subst(sigma, s);
    t = apply_subst(sigma, t);
    if (s == t) continue;
    if (!s.is_var() && t.is_var()) std::swap(s, t);

    if (s.is_var()) {
      if (t.is_var()) {
        if (s.name() < t.name()) std::swap(s, t);
        extend(sigma, s.name(), t);
      } else {
        // Covers x = inv(x) as well as x under a free symbol.
        if (t.occurs(s.name())) return std::nullopt;
        extend(sigma, s.name(), t);
      }
      continue;
    }

    if (s.is_inv() && t.is_inv()) {
      work.emplace_back(s.arg(0), t.arg(0));
    } else if (s.is_inv() || t.is_inv()) {
      if (t.is_inv()) std::swap(s, t);
      // inv(s') = f(..): only a variable s' can absorb the inverse, since a
      // canonical inv(f(..)) never equals a free-rooted term.
      if (!s.arg(0).is_var()) return std::nullopt;
      work.emplace_back(s.arg(0), Term::inv(t));
    } else {
      if (s.name() != t.name() || s.args().size() != t.args().size()) return std::nullopt;
      for (std::size_t i = 0; i < s.args().size(); ++i) work.emplace_back(s.arg(i), t.arg(i));
    }
  }
  return sigma;
}

}  // namespace xorunify
