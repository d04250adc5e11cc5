#include "xorunify/term.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace xorunify {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::make(Node n) {
  if (n.is_var) {
    n.hash = mix(0x51ed27, std::hash<std::string>{}(n.var_name));
    n.size = 1;
  } else {
    std::size_t h = mix(std::hash<std::string>{}(n.sym.name), n.args.size());
    std::size_t sz = 1;
    for (const Term& a : n.args) {
      h = mix(h, a.hash());
      sz += a.size();
    }
    n.hash = h;
    n.size = sz;
  }
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::var(std::string name) {
  Node n;
  n.is_var = true;
  n.var_name = std::move(name);
  return make(std::move(n));
}

Term Term::constant(std::string name) { return app(std::move(name), {}); }

Term Term::app(std::string name, std::vector<Term> args) {
  std::size_t arity = args.size();
  return raw(Symbol::free(std::move(name), arity), std::move(args));
}

Term Term::raw(Symbol sym, std::vector<Term> args) {
  Node n;
  sym.arity = args.size();
  n.sym = std::move(sym);
  n.args = std::move(args);
  return make(std::move(n));
}

Term Term::raw_inv(Term t) { return raw(Symbol::inv(), {std::move(t)}); }

Term Term::raw_xor(std::vector<Term> args) {
  std::size_t arity = args.size();
  return raw(Symbol::xor_of(arity), std::move(args));
}

Term Term::zero() {
  static const Term z = raw(Symbol::zero(), {});
  return z;
}

const Symbol& Term::symbol() const {
  if (is_var()) throw std::logic_error("variable has no symbol: " + node_->var_name);
  return node_->sym;
}

Term Term::inv(const Term& t) {
  if (t.is_inv()) return t.arg(0);
  return raw_inv(t);
}

Term Term::xor_of(std::vector<Term> summands) {
  std::vector<Term> flat;
  flat.reserve(summands.size());
  for (Term& s : summands) {
    if (s.is_zero()) continue;
    if (s.is_xor()) {
      flat.insert(flat.end(), s.args().begin(), s.args().end());
    } else {
      flat.push_back(std::move(s));
    }
  }
  std::sort(flat.begin(), flat.end(), [](const Term& a, const Term& b) { return compare(a, b) < 0; });
  std::vector<Term> kept;
  kept.reserve(flat.size());
  for (std::size_t i = 0; i < flat.size();) {
    std::size_t j = i;
    while (j < flat.size() && flat[j] == flat[i]) ++j;
    if ((j - i) % 2 == 1) kept.push_back(flat[i]);
    i = j;
  }
  if (kept.empty()) return zero();
  if (kept.size() == 1) return kept.front();
  return raw_xor(std::move(kept));
}

bool Term::occurs(const std::string& var_name) const {
  if (is_var()) return node_->var_name == var_name;
  for (const Term& a : node_->args)
    if (a.occurs(var_name)) return true;
  return false;
}

void Term::collect_vars(std::set<std::string>& out) const {
  if (is_var()) {
    out.insert(node_->var_name);
    return;
  }
  for (const Term& a : node_->args) a.collect_vars(out);
}

std::set<std::string> Term::vars() const {
  std::set<std::string> out;
  collect_vars(out);
  return out;
}

void Term::vars_in_order(std::vector<std::string>& out) const {
  if (is_var()) {
    if (std::find(out.begin(), out.end(), node_->var_name) == out.end()) out.push_back(node_->var_name);
    return;
  }
  for (const Term& a : node_->args) a.vars_in_order(out);
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return compare(a, b) == 0;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) { return compare(a, b); }

std::strong_ordering compare(const Term& a, const Term& b) {
  if (a.is_var() != b.is_var()) return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.is_var()) return a.name() <=> b.name();
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  if (auto c = a.args().size() <=> b.args().size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (auto c = compare(a.arg(i), b.arg(i)); c != 0) return c;
  return std::strong_ordering::equal;
}

namespace {

class Normalizer {
 public:
  Term run(const Term& t) {
    if (t.is_var()) return t;
    const Symbol& sym = t.symbol();
    switch (sym.kind) {
      case SymbolKind::Zero:
        if (!t.args().empty()) throw MalformedTerm("0 takes no arguments");
        return t;
      case SymbolKind::Inv:
        if (t.args().size() != 1) throw MalformedTerm("inv expects 1 argument, got " + std::to_string(t.args().size()));
        return Term::inv(run(t.arg(0)));
      case SymbolKind::Xor: {
        if (t.args().size() < 2) throw MalformedTerm("xor expects at least 2 arguments");
        std::vector<Term> parts;
        parts.reserve(t.args().size());
        for (const Term& a : t.args()) parts.push_back(run(a));
        return Term::xor_of(std::move(parts));
      }
      case SymbolKind::Free: {
        auto [it, fresh] = arities_.emplace(sym.name, t.args().size());
        if (!fresh && it->second != t.args().size())
          throw MalformedTerm("symbol '" + sym.name + "' used with arity " + std::to_string(t.args().size()) +
                              " and " + std::to_string(it->second));
        std::vector<Term> args;
        args.reserve(t.args().size());
        bool changed = false;
        for (const Term& a : t.args()) {
          args.push_back(run(a));
          changed = changed || !(args.back() == a);
        }
        if (!changed) return t;
        return Term::app(sym.name, std::move(args));
      }
    }
    return t;
  }

 private:
  std::unordered_map<std::string, std::size_t> arities_;
};

Term substitute(const Substitution& sigma, const Term& t) {
  if (t.is_var()) {
    if (const Term* b = sigma.find(t.name())) return *b;
    return t;
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(substitute(sigma, a));
    changed = changed || !(args.back() == a);
  }
  if (!changed) return t;
  const Symbol& sym = t.symbol();
  switch (sym.kind) {
    case SymbolKind::Inv:
      return Term::inv(args[0]);
    case SymbolKind::Xor:
      return Term::xor_of(std::move(args));
    default:
      return Term::app(sym.name, std::move(args));
  }
}

}  // namespace

Term normalize(const Term& t) { return Normalizer{}.run(t); }

bool eq_modulo_e(const Term& s, const Term& t) { return normalize(s) == normalize(t); }

Substitution::Substitution(Map bindings) {
  for (auto& [v, t] : bindings) bind(v, t);
}

void Substitution::bind(const std::string& var, const Term& t) {
  Term n = normalize(t);
  if (n.is_var() && n.name() == var) {
    bindings_.erase(var);
    return;
  }
  bindings_.insert_or_assign(var, std::move(n));
}

const Term* Substitution::find(const std::string& var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

bool Substitution::is_idempotent() const {
  for (const auto& [v, t] : bindings_)
    for (const auto& [w, _] : bindings_)
      if (t.occurs(w)) return false;
  return true;
}

std::set<std::string> Substitution::range_vars() const {
  std::set<std::string> out;
  for (const auto& [v, t] : bindings_) t.collect_vars(out);
  return out;
}

Term apply_subst(const Substitution& sigma, const Term& t) {
  if (sigma.empty()) return normalize(t);
  return normalize(substitute(sigma, t));
}

Substitution compose(const Substitution& sigma, const Substitution& tau) {
  Substitution rho;
  for (const auto& [v, t] : sigma) rho.bind(v, apply_subst(tau, t));
  for (const auto& [v, t] : tau)
    if (!sigma.binds(v)) rho.bind(v, t);
  for (const auto& [v, t] : rho)
    if (t.occurs(v)) throw CompositionCycle("variable " + v + " occurs in its own binding");
  return rho;
}

Substitution resolve(const Substitution& triangular) {
  // Depth-first with memoization over the binding graph.
  std::map<std::string, Term> done;
  std::set<std::string> active;
  std::function<Term(const std::string&)> visit = [&](const std::string& v) -> Term {
    if (auto it = done.find(v); it != done.end()) return it->second;
    const Term* b = triangular.find(v);
    if (!b) return Term::var(v);
    if (!active.insert(v).second) throw CompositionCycle("cyclic bindings through " + v);
    Substitution local;
    for (const std::string& w : b->vars())
      if (triangular.binds(w)) local.bind(w, visit(w));
    Term r = apply_subst(local, *b);
    active.erase(v);
    if (r.occurs(v)) throw CompositionCycle("variable " + v + " occurs in its own binding");
    done.emplace(v, r);
    return r;
  };
  Substitution out;
  for (const auto& [v, _] : triangular) out.bind(v, visit(v));
  return out;
}

}  // namespace xorunify
