#include "xorunify/unify_acun.hpp"

#include <algorithm>

namespace xorunify {

LinearOrder::LinearOrder(std::vector<std::string> ascending) : seq_(std::move(ascending)) {
  for (std::size_t i = 0; i < seq_.size(); ++i)
    if (!rank_.emplace(seq_[i], i).second) throw ContractViolation("duplicate variable in linear order: " + seq_[i]);
}

std::size_t LinearOrder::rank(const std::string& v) const {
  auto it = rank_.find(v);
  if (it == rank_.end()) throw ContractViolation("variable not in linear order: " + v);
  return it->second;
}

std::optional<std::size_t> GF2System::column_of(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].name == name) return i;
  return std::nullopt;
}

namespace {

void collect_atoms(const Term& t, std::vector<Term>& out) {
  if (t.is_zero()) return;
  if (t.is_xor()) {
    for (const Term& a : t.args()) collect_atoms(a, out);
    return;
  }
  if (t.is_var() || t.is_constant()) {
    out.push_back(t);
    return;
  }
  throw ContractViolation("non-pure term in XOR system: " + t.name() + "(...)");
}

std::vector<Term> atoms_of(const Equation& e) {
  std::vector<Term> atoms;
  collect_atoms(Term::xor_of({e.lhs, e.rhs}), atoms);
  return atoms;
}

Term atom_term(const Column& c) {
  return c.kind == ColumnKind::Constant ? Term::constant(c.name) : Term::var(c.name);
}

// Reduced row echelon form scanning columns left to right. Returns false as
// soon as a row leads with a column for which `may_pivot` is false.
template <class MayPivot>
bool eliminate(const GF2System& sys, MayPivot may_pivot, std::vector<BitRow>& rows,
               std::vector<std::pair<std::size_t, std::size_t>>& pivots) {
  rows = sys.rows;
  std::size_t next = 0;
  for (std::size_t c = 0; c < sys.columns.size() && next < rows.size(); ++c) {
    std::size_t r = next;
    while (r < rows.size() && !rows[r].test(c)) ++r;
    if (r == rows.size()) continue;
    if (!may_pivot(sys.columns[c])) return false;
    std::swap(rows[r], rows[next]);
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (k != next && rows[k].test(c)) rows[k] ^= rows[next];
    pivots.emplace_back(next, c);
    ++next;
  }
  return true;
}

Substitution bindings_from(const GF2System& sys, const std::vector<BitRow>& rows,
                           const std::vector<std::pair<std::size_t, std::size_t>>& pivots) {
  Substitution sigma;
  for (auto [r, c] : pivots) {
    std::vector<Term> rest;
    for (std::size_t k = c + 1; k < sys.columns.size(); ++k)
      if (rows[r].test(k)) rest.push_back(atom_term(sys.columns[k]));
    sigma.bind(sys.columns[c].name, Term::xor_of(std::move(rest)));
  }
  return sigma;
}

}  // namespace

std::vector<BitRow> encode_rows(const std::vector<Equation>& eqs, const std::vector<Column>& columns) {
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < columns.size(); ++i) col.emplace(columns[i].name, i);
  std::vector<BitRow> rows;
  for (const Equation& e : eqs) {
    BitRow row(columns.size());
    for (const Term& a : atoms_of(e)) {
      auto it = col.find(a.name());
      if (it == col.end()) throw ContractViolation("atom without column: " + a.name());
      row.flip(it->second);
    }
    if (row.any()) rows.push_back(std::move(row));
  }
  return rows;
}

GF2System to_gf2_system(const std::vector<Equation>& eqs, const IndexAssignment& indices, const LinearOrder& order) {
  std::set<std::string> free_unknowns, shared, constants;
  for (const Equation& e : eqs) {
    for (const Term& a : atoms_of(e)) {
      if (a.is_constant()) {
        constants.insert(a.name());
      } else if (indices.count(a.name())) {
        if (!order.contains(a.name())) throw ContractViolation("shared variable missing from order: " + a.name());
        shared.insert(a.name());
      } else {
        if (order.contains(a.name())) throw ContractViolation("ordered variable without index: " + a.name());
        free_unknowns.insert(a.name());
      }
    }
  }

  GF2System sys;
  for (const auto& v : free_unknowns) sys.columns.push_back({v, ColumnKind::Unknown, false});
  std::vector<std::string> ordered(shared.begin(), shared.end());
  std::sort(ordered.begin(), ordered.end(),
            [&](const std::string& a, const std::string& b) { return order.rank(a) > order.rank(b); });
  for (const auto& v : ordered) {
    auto kind = indices.at(v) == TheoryIndex::Std ? ColumnKind::Restricted : ColumnKind::Unknown;
    sys.columns.push_back({v, kind, true});
  }
  for (const auto& c : constants) sys.columns.push_back({c, ColumnKind::Constant, false});
  sys.rows = encode_rows(eqs, sys.columns);
  return sys;
}

std::optional<Substitution> solve_acun_lcr(const GF2System& sys, const LinearOrder& order) {
  // Shared columns must appear in strictly descending order.
  std::optional<std::size_t> prev;
  for (const Column& c : sys.columns) {
    if (!c.shared) continue;
    std::size_t r = order.rank(c.name);
    if (prev && r >= *prev) throw ContractViolation("GF2 columns not in descending order at " + c.name);
    prev = r;
  }
  std::vector<BitRow> rows;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  if (!eliminate(sys, [](const Column& c) { return c.kind == ColumnKind::Unknown; }, rows, pivots))
    return std::nullopt;
  return bindings_from(sys, rows, pivots);
}

std::optional<Substitution> solve_acun(const GF2System& sys) {
  // Same columns with the unknowns moved to the front: restricted atoms then
  // behave like constants.
  GF2System moved;
  std::vector<std::size_t> perm;
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t i = 0; i < sys.columns.size(); ++i)
      if ((sys.columns[i].kind == ColumnKind::Unknown) == (pass == 0)) perm.push_back(i);
  for (std::size_t i : perm) moved.columns.push_back(sys.columns[i]);
  for (const BitRow& r : sys.rows) {
    BitRow m(perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j)
      if (r.test(perm[j])) m.flip(j);
    moved.rows.push_back(std::move(m));
  }
  std::vector<BitRow> rows;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  if (!eliminate(moved, [](const Column& c) { return c.kind == ColumnKind::Unknown; }, rows, pivots))
    return std::nullopt;
  return bindings_from(moved, rows, pivots);
}

}  // namespace xorunify
