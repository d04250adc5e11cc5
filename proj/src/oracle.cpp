#include "xorunify/oracle.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace xorunify::oracle {

namespace {

class UniverseBuilder {
 public:
  explicit UniverseBuilder(std::size_t cap) : cap_(cap) {}

  void add(const Term& raw) {
    Term t = normalize(raw);
    if (seen_.insert(t).second) {
      terms_.push_back(t);
      if (terms_.size() > cap_) throw UniverseTooLarge("term universe exceeds " + std::to_string(cap_) + " terms");
    }
  }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::size_t cap_;
  std::vector<Term> terms_;
  std::unordered_set<Term, TermHash> seen_;
};

// All index tuples of length k over [0, n), calling f for each.
void for_each_tuple(std::size_t n, std::size_t k, bool nondecreasing, const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (n == 0 && k > 0) return;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] + 1 < n) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = nondecreasing ? idx[i] : 0;
        break;
      }
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

Term term_of_symbol(const Symbol& s, std::vector<Term> args) {
  if (s.kind == SymbolKind::Inv) return Term::raw_inv(std::move(args[0]));
  return Term::app(s.name, std::move(args));
}

}  // namespace

TermUniverse enum_universe(const UniverseBounds& bounds) {
  UniverseBuilder b(bounds.cap);
  for (const auto& c : bounds.constants) b.add(Term::constant(c));
  for (const auto& v : bounds.variables) b.add(Term::var(v));
  for (std::size_t d = 0; d < bounds.max_depth; ++d) {
    const std::vector<Term> level = b.terms();
    for (const Symbol& s : bounds.symbols) {
      if (s.kind != SymbolKind::Free && s.kind != SymbolKind::Inv) continue;
      if (s.arity == 0) continue;
      for_each_tuple(level.size(), s.arity, false, [&](const std::vector<std::size_t>& idx) {
        std::vector<Term> args;
        for (std::size_t i : idx) args.push_back(level[i]);
        b.add(term_of_symbol(s, std::move(args)));
      });
    }
    for (std::size_t k = 2; k <= bounds.max_xor_width; ++k) {
      for_each_tuple(level.size(), k, true, [&](const std::vector<std::size_t>& idx) {
        std::vector<Term> args;
        for (std::size_t i : idx) args.push_back(level[i]);
        b.add(Term::raw_xor(std::move(args)));
      });
    }
  }
  return {b.terms(), bounds};
}

UniverseBounds bounds_for(const UnificationProblem& p, std::size_t depth, std::size_t width) {
  UniverseBounds bounds;
  bounds.max_depth = depth;
  bounds.max_xor_width = width;
  for (const Symbol& s : p.signature) {
    if (s.kind == SymbolKind::Free && s.arity == 0) {
      bounds.constants.push_back(s.name);
    } else if (s.kind == SymbolKind::Free || s.kind == SymbolKind::Inv) {
      bounds.symbols.push_back(s);
    }
  }
  return bounds;
}

bool is_unifier(const Substitution& sigma, const UnificationProblem& p) {
  for (const Equation& e : p.equations)
    if (!(apply_subst(sigma, e.lhs) == apply_subst(sigma, e.rhs))) return false;
  return true;
}

void for_each_assignment(const std::vector<std::string>& vars, const std::vector<Term>& universe, std::size_t cap,
                         const std::function<bool(const Substitution&)>& visit) {
  double total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) total *= static_cast<double>(universe.size());
  if (total > static_cast<double>(cap))
    throw UniverseTooLarge("enumeration of " + std::to_string(static_cast<long long>(total)) + " assignments exceeds cap");
  if (universe.empty() && !vars.empty()) return;
  std::vector<std::size_t> idx(vars.size(), 0);
  while (true) {
    Substitution::Map m;
    for (std::size_t i = 0; i < vars.size(); ++i) m.emplace(vars[i], universe[idx[i]]);
    if (!visit(Substitution(std::move(m)))) return;
    std::size_t i = vars.size();
    while (true) {
      if (i == 0) return;
      --i;
      if (++idx[i] < universe.size()) break;
      idx[i] = 0;
    }
  }
}

namespace {

// Matching of a pattern against a target value. Each step only ever
// records a value that is forced: free symbols must agree, inv moves to the
// other side, and a variable occurring once as a direct xor summand equals
// the target plus the other summands once those are known.
class Matcher {
 public:
  Matcher(const std::set<std::string>& pattern_vars, Substitution& tau) : pattern_vars_(pattern_vars), tau_(tau) {}

  enum class Result { Fail, Progress, Stuck, Done };

  Result match(const Term& pattern, const Term& target) {
    Term p = apply_subst(tau_, pattern);
    if (open_vars(p).empty()) return p == target ? Result::Done : Result::Fail;
    if (p.is_var()) {
      tau_.bind(p.name(), target);
      return Result::Progress;
    }
    if (p.is_free_app()) {
      if (!target.is_free_app() || target.name() != p.name() || target.args().size() != p.args().size())
        return Result::Fail;
      Result agg = Result::Done;
      for (std::size_t i = 0; i < p.args().size(); ++i) {
        Result r = match(p.arg(i), target.arg(i));
        if (r == Result::Fail) return r;
        if (r == Result::Progress) agg = Result::Progress;
        if (r == Result::Stuck && agg == Result::Done) agg = Result::Stuck;
      }
      return agg;
    }
    if (p.is_inv()) return match(p.arg(0), Term::inv(target));
    if (p.is_xor()) {
      auto open = open_vars(p);
      for (const Term& s : p.args()) {
        if (!s.is_var() || !open.count(s.name())) continue;
        std::size_t uses = 0;
        for (const Term& o : p.args()) uses += o.occurs(s.name()) ? 1 : 0;
        if (uses != 1) continue;
        std::vector<Term> rest{target};
        bool closed = true;
        for (const Term& o : p.args()) {
          if (o == s) continue;
          if (!open_vars(o).empty()) closed = false;
          rest.push_back(o);
        }
        if (!closed) continue;
        tau_.bind(s.name(), Term::xor_of(std::move(rest)));
        return Result::Progress;
      }
    }
    return Result::Stuck;
  }

  std::set<std::string> open_vars(const Term& t) const {
    std::set<std::string> vs;
    for (const auto& v : t.vars())
      if (pattern_vars_.count(v)) vs.insert(v);
    return vs;
  }

 private:
  const std::set<std::string>& pattern_vars_;
  Substitution& tau_;
};

}  // namespace

bool is_instance(const Substitution& target, const Substitution& general, const std::set<std::string>& domain,
                 const std::set<std::string>& rigid, const std::vector<Term>& universe) {
  // Pattern per domain variable. Target values may contain variables too
  // (as opaque atoms), so the pattern's own variables are renamed apart.
  std::vector<std::pair<Term, Term>> goals;
  Substitution apart;
  std::set<std::string> pattern_vars;
  auto rename = [&](const Term& pat) {
    for (const auto& v : pat.vars()) {
      if (rigid.count(v) || apart.binds(v)) continue;
      apart.bind(v, Term::var("?" + v));
      pattern_vars.insert("?" + v);
    }
    return apply_subst(apart, pat);
  };
  for (const auto& x : domain) {
    const Term* t = target.find(x);
    const Term* g = general.find(x);
    goals.emplace_back(rename(g ? *g : Term::var(x)), t ? *t : Term::var(x));
  }

  Substitution tau;
  Matcher m(pattern_vars, tau);
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& [pat, val] : goals) {
      auto r = m.match(pat, val);
      if (r == Matcher::Result::Fail) return false;
      if (r == Matcher::Result::Progress) progress = true;
    }
  }

  std::set<std::string> open;
  for (const auto& [pat, val] : goals) {
    auto vs = m.open_vars(apply_subst(tau, pat));
    open.insert(vs.begin(), vs.end());
  }
  auto satisfied = [&](const Substitution& full) {
    for (const auto& [pat, val] : goals)
      if (!(apply_subst(full, pat) == val)) return false;
    return true;
  };
  if (open.empty()) return satisfied(tau);

  bool found = false;
  std::vector<std::string> rest(open.begin(), open.end());
  for_each_assignment(rest, universe, std::size_t{1} << 40, [&](const Substitution& extra) {
    // tau's values may mention variables now being assigned.
    Substitution composed = compose(tau, extra);
    if (satisfied(composed)) found = true;
    return !found;
  });
  return found;
}

CompletenessReport check_complete(const std::vector<Substitution>& found, const UnificationProblem& p,
                                  const TermUniverse& u, std::size_t cap) {
  CompletenessReport rep;
  std::vector<std::string> vars(p.problem_vars.begin(), p.problem_vars.end());
  static const std::set<std::string> no_rigid;
  for_each_assignment(vars, u.terms, cap, [&](const Substitution& rho) {
    if (!is_unifier(rho, p)) return true;
    ++rep.ground_solutions;
    for (const Substitution& s : found)
      if (is_instance(rho, s, p.problem_vars, no_rigid, u.terms)) return true;
    rep.covered = false;
    rep.counterexample = rho;
    return false;
  });
  return rep;
}

CompletenessReport check_covers(const std::vector<Substitution>& from, const std::vector<Substitution>& to,
                                const std::set<std::string>& domain, const std::set<std::string>& rigid,
                                const TermUniverse& u, std::size_t cap) {
  CompletenessReport rep;
  for (const Substitution& s : from) {
    // Free variables of the instance: unbound domain variables and range variables.
    std::set<std::string> free_vars = s.range_vars();
    for (const auto& x : domain)
      if (!s.binds(x)) free_vars.insert(x);
    std::vector<std::string> vars;
    for (const auto& v : free_vars)
      if (!rigid.count(v)) vars.push_back(v);
    for_each_assignment(vars, u.terms, cap, [&](const Substitution& tau) {
      Substitution rho;
      for (const auto& x : domain) rho.bind(x, apply_subst(tau, s.find(x) ? *s.find(x) : Term::var(x)));
      // rho may drop x |-> x for rigid x; is_instance treats missing as x.
      ++rep.ground_solutions;
      for (const Substitution& g : to)
        if (is_instance(rho, g, domain, rigid, u.terms)) return true;
      rep.covered = false;
      rep.counterexample = rho;
      return false;
    });
    if (!rep.covered) break;
  }
  return rep;
}

namespace {

// One rewrite step anywhere in the term, or nullopt at a fixpoint.
std::optional<Term> step(const Term& t) {
  if (t.is_var()) return std::nullopt;
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (auto r = step(t.arg(i))) {
      std::vector<Term> args(t.args().begin(), t.args().end());
      args[i] = *r;
      return Term::raw(t.symbol(), std::move(args));
    }
  }
  if (t.is_inv() && t.arg(0).is_inv()) return t.arg(0).arg(0);
  if (t.is_xor()) {
    const auto args = t.args();
    // associativity: lift a nested xor
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i].is_xor()) {
        std::vector<Term> flat(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(i));
        flat.insert(flat.end(), args[i].args().begin(), args[i].args().end());
        flat.insert(flat.end(), args.begin() + static_cast<std::ptrdiff_t>(i) + 1, args.end());
        return Term::raw_xor(std::move(flat));
      }
    }
    // unit
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i].is_zero()) {
        std::vector<Term> rest;
        for (std::size_t j = 0; j < args.size(); ++j)
          if (j != i) rest.push_back(args[j]);
        if (rest.size() == 1) return rest[0];
        return Term::raw_xor(std::move(rest));
      }
    }
    // commutativity: one adjacent swap towards sorted order
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (compare(args[i + 1], args[i]) < 0) {
        std::vector<Term> swapped(args.begin(), args.end());
        std::swap(swapped[i], swapped[i + 1]);
        return Term::raw_xor(std::move(swapped));
      }
    }
    // nilpotence on adjacent equal summands
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] == args[i + 1]) {
        std::vector<Term> rest;
        for (std::size_t j = 0; j < args.size(); ++j)
          if (j != i && j != i + 1) rest.push_back(args[j]);
        if (rest.empty()) return Term::zero();
        if (rest.size() == 1) return rest[0];
        return Term::raw_xor(std::move(rest));
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Term rewrite_to_fixpoint(const Term& t) {
  Term cur = t;
  while (auto next = step(cur)) cur = *next;
  return cur;
}

}  // namespace xorunify::oracle
