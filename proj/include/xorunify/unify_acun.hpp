// XOR unification with linear constant restriction, by Gaussian elimination
// over GF(2).
//
// A shared variable with std index is a restricted atom: the XOR solver may
// not bind it, and an unknown v may only be bound to a sum of atoms that are
// smaller than v in the linear order. Columns are laid out with the
// unrestricted unknowns first, then the shared variables in descending
// order, then free constants, so that a reduced row echelon form pivoting on
// unknowns only yields bindings over atoms to the right of (smaller than)
// their pivot.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xorunify/parser.hpp"
#include "xorunify/term.hpp"

namespace xorunify {

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class TheoryIndex { Std, Acun };
using IndexAssignment = std::map<std::string, TheoryIndex>;

/// Total order on the shared variables; position in `sequence` is the rank.
class LinearOrder {
 public:
  LinearOrder() = default;
  /// Ascending: the first element is the smallest.
  explicit LinearOrder(std::vector<std::string> ascending);

  const std::vector<std::string>& sequence() const { return seq_; }
  bool contains(const std::string& v) const { return rank_.count(v) != 0; }
  std::size_t rank(const std::string& v) const;
  bool less(const std::string& a, const std::string& b) const { return rank(a) < rank(b); }
  std::size_t size() const { return seq_.size(); }

  friend bool operator==(const LinearOrder& a, const LinearOrder& b) { return a.seq_ == b.seq_; }

 private:
  std::vector<std::string> seq_;
  std::map<std::string, std::size_t> rank_;
};

class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(std::size_t bits) : words_((bits + 63) / 64, 0) {}

  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  BitRow& operator^=(const BitRow& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  friend bool operator==(const BitRow&, const BitRow&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

enum class ColumnKind { Unknown, Restricted, Constant };

struct Column {
  std::string name;
  ColumnKind kind;
  /// Member of the ordered shared-variable set.
  bool shared = false;
  friend bool operator==(const Column&, const Column&) = default;
};

struct GF2System {
  std::vector<Column> columns;
  std::vector<BitRow> rows;

  std::optional<std::size_t> column_of(const std::string& name) const;
};

/// Atom parity vector of s + t for every equation, over the given columns.
/// Each equation side must be a sum of variables and free constants.
std::vector<BitRow> encode_rows(const std::vector<Equation>& eqs, const std::vector<Column>& columns);

/// Variables of `indices` with std index become restricted atoms; every other
/// variable is an unknown. Variables absent from `indices` are unrestricted
/// and must be absent from `order`; shared ones must be present.
GF2System to_gf2_system(const std::vector<Equation>& eqs, const IndexAssignment& indices, const LinearOrder& order);

/// Unifier respecting `order`, or nullopt. Pivot unknowns are bound to the
/// sum of the remaining atoms of their reduced row; other unknowns stay free.
std::optional<Substitution> solve_acun_lcr(const GF2System& sys, const LinearOrder& order);

/// Unrestricted solve of the same columns: restricted atoms act as
/// constants, the order plays no role.
std::optional<Substitution> solve_acun(const GF2System& sys);

}  // namespace xorunify
