// Term algebra over free symbols, an involutive inverse and XOR.
//
// Terms are immutable, reference-counted trees. The canonical form is the
// normal form of the convergent system {inv(inv(x)) -> x} combined with AC
// flattening and nilpotent cancellation of xor:
//
//   * no inv(inv(t)) subterm;
//   * xor nodes are flat, carry no zero child, no duplicate children, at
//     least two children, and list their children in term order.
//
// Two terms are equal modulo the theory iff their canonical forms are
// syntactically identical.
#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace xorunify {

enum class SymbolKind { Free, Inv, Xor, Zero };

struct Symbol {
  std::string name;
  std::size_t arity = 0;
  SymbolKind kind = SymbolKind::Free;

  static Symbol free(std::string name, std::size_t arity) {
    return {std::move(name), arity, SymbolKind::Free};
  }
  static Symbol inv() { return {"inv", 1, SymbolKind::Inv}; }
  static Symbol zero() { return {"0", 0, SymbolKind::Zero}; }
  static Symbol xor_of(std::size_t arity) { return {"xor", arity, SymbolKind::Xor}; }

  bool is_std() const { return kind == SymbolKind::Free || kind == SymbolKind::Inv; }
  bool is_acun() const { return !is_std(); }

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

class MalformedTerm : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Term {
 public:
  /// Builds a variable.
  static Term var(std::string name);
  /// Builds a free constant (a free symbol of arity 0).
  static Term constant(std::string name);
  /// Builds a free application. No arity bookkeeping happens here; normalize
  /// checks consistency.
  static Term app(std::string name, std::vector<Term> args);
  /// Raw constructors: the result is not necessarily canonical.
  static Term raw(Symbol sym, std::vector<Term> args);
  static Term raw_inv(Term t);
  static Term raw_xor(std::vector<Term> args);
  static Term zero();

  /// Canonical-preserving constructors: arguments must be canonical.
  static Term inv(const Term& t);
  static Term xor_of(std::vector<Term> summands);

  bool is_var() const { return node_->is_var; }
  bool is_app() const { return !node_->is_var; }
  bool is_zero() const { return is_app() && node_->sym.kind == SymbolKind::Zero; }
  bool is_xor() const { return is_app() && node_->sym.kind == SymbolKind::Xor; }
  bool is_inv() const { return is_app() && node_->sym.kind == SymbolKind::Inv; }
  bool is_free_app() const { return is_app() && node_->sym.kind == SymbolKind::Free; }
  bool is_constant() const { return is_free_app() && node_->args.empty(); }

  /// Variable name, or the symbol name for applications.
  const std::string& name() const { return is_var() ? node_->var_name : node_->sym.name; }
  const Symbol& symbol() const;
  std::span<const Term> args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args.at(i); }

  std::size_t hash() const { return node_->hash; }
  std::size_t size() const { return node_->size; }

  /// Root theory: std for free symbols and inv, acun for xor and 0, none for
  /// variables and free constants (which may occur in either theory).
  bool std_rooted() const { return is_app() && !is_constant() && node_->sym.is_std(); }
  bool acun_rooted() const { return is_app() && node_->sym.is_acun(); }

  bool occurs(const std::string& var_name) const;
  void collect_vars(std::set<std::string>& out) const;
  std::set<std::string> vars() const;
  /// Variables in pre-order, first occurrence only.
  void vars_in_order(std::vector<std::string>& out) const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node {
    bool is_var = false;
    std::string var_name;
    Symbol sym;
    std::vector<Term> args;
    std::size_t hash = 0;
    std::size_t size = 1;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(Node n);

  std::shared_ptr<const Node> node_;
};

/// Fixed total order: variables before applications; variables by name;
/// applications by symbol name, then arity, then children lexicographically.
std::strong_ordering compare(const Term& a, const Term& b);

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Canonical form. Throws MalformedTerm on arity violations (inv not unary,
/// xor with fewer than two arguments, 0 applied, a free symbol used with two
/// different arities).
Term normalize(const Term& t);

bool eq_modulo_e(const Term& s, const Term& t);

/// Finite map from variables to canonical terms.
class Substitution {
 public:
  using Map = std::map<std::string, Term>;

  Substitution() = default;
  explicit Substitution(Map bindings);

  /// Adds or replaces a binding; the term is normalized, x |-> x is dropped.
  void bind(const std::string& var, const Term& t);
  void erase(const std::string& var) { bindings_.erase(var); }

  const Term* find(const std::string& var) const;
  bool binds(const std::string& var) const { return bindings_.count(var) != 0; }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const Map& bindings() const { return bindings_; }
  auto begin() const { return bindings_.begin(); }
  auto end() const { return bindings_.end(); }

  /// No domain variable occurs in any range term.
  bool is_idempotent() const;
  std::set<std::string> range_vars() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  Map bindings_;
};

class CompositionCycle : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simultaneous replacement followed by normalization.
Term apply_subst(const Substitution& sigma, const Term& t);

/// rho with t.rho = (t.sigma).tau for every t. Throws CompositionCycle when
/// some variable ends up bound to a term that contains it.
Substitution compose(const Substitution& sigma, const Substitution& tau);

/// Turns a triangular (acyclic) set of bindings into an idempotent
/// substitution with the same solutions. Throws CompositionCycle otherwise.
Substitution resolve(const Substitution& triangular);

/// Per-problem generator of variable names under the reserved prefix.
class FreshNames {
 public:
  static constexpr char kPrefix = '_';
  static bool is_reserved(const std::string& name) { return !name.empty() && name[0] == kPrefix; }

  std::string next() { return std::string(1, kPrefix) + std::to_string(++counter_); }

 private:
  std::size_t counter_ = 0;
};

}  // namespace xorunify
