// Combination of the std and XOR solvers into a unification procedure for
// the union of both theories.
//
// The search runs over identifications of the shared variables, coarsening
// one merge at a time. For every identification the std part is solved once
// without restrictions; its mgu fixes almost every theory index and a partial
// order on the shared variables. The XOR part is then solved under one
// linear extension of that order. A success prunes every coarser
// identification from the rest of the search.
#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "xorunify/parser.hpp"
#include "xorunify/term.hpp"
#include "xorunify/unify_acun.hpp"

namespace xorunify {

struct PurifiedProblem {
  std::vector<Equation> std_eqs;
  std::vector<Equation> acun_eqs;
  /// Variables occurring on both sides.
  std::set<std::string> shared_vars;
  /// Fresh variable -> the alien subterm it stands for.
  std::map<std::string, Term> abstraction_map;
  /// Variables of the problem before purification.
  std::set<std::string> original_vars;
};

/// Replaces every maximal alien subterm by a fresh variable (identical alien
/// subterms share one) and splits equations whose sides belong to different
/// theories. Variables, free constants and equations between them are
/// neutral and stay on the std side.
PurifiedProblem purify(const UnificationProblem& p);

/// Set partition of an ordered variable list, as a restricted growth string.
class Partition {
 public:
  Partition(std::vector<std::string> vars, std::vector<std::uint32_t> rgs);
  static Partition discrete(std::vector<std::string> vars);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<std::uint32_t>& encoding() const { return rgs_; }
  std::size_t block_count() const { return blocks_; }
  /// Variables sharing a block, each block in variable-list order.
  std::vector<std::vector<std::string>> blocks() const;
  /// Variable -> least name of its block, for non-representatives only.
  Substitution representative_map() const;
  /// Every block of *this lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.vars_ == b.vars_ && a.rgs_ == b.rgs_; }

 private:
  std::vector<std::string> vars_;
  std::vector<std::uint32_t> rgs_;
  std::size_t blocks_ = 0;
};

/// Breadth-first stream over the partition lattice: first the discrete
/// partition, then all partitions with one merge, and so on; within a level
/// in lexicographic order of the restricted growth string. After prune(p)
/// the stream skips every partition that p refines.
class PartitionEnumerator {
 public:
  explicit PartitionEnumerator(std::vector<std::string> vars);

  std::optional<Partition> next();
  void prune(const Partition& p);

 private:
  bool advance();
  bool pruned(const std::vector<std::uint32_t>& rgs) const;

  std::vector<std::string> vars_;
  std::vector<std::uint32_t> cur_;
  std::size_t blocks_;
  bool started_ = false;
  bool done_ = false;
  /// For each pruning partition: (i, j) pairs that must share a block.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> pruned_;
};

/// Replaces each variable of `p` by its block representative, renormalizes,
/// drops trivial and duplicate equations and recomputes the shared set.
PurifiedProblem apply_partition(const PurifiedProblem& pp, const Partition& p);

struct IndexDerivation {
  /// Indices fixed by the std mgu.
  IndexAssignment forced;
  /// (x, y) with x |-> inv(y), y unbound, x shared: x and y need a choice.
  std::vector<std::pair<std::string, std::string>> branch_pairs;
};

IndexDerivation derive_indices(const Substitution& sigma_std, const std::set<std::string>& shared);

/// The two index choices for a branch pair. Branch A keeps x |-> inv(y),
/// x std, y acun; branch B rebinds y |-> inv(x), y std, x acun.
Substitution reorient_inv_pair(const Substitution& sigma_std, const std::string& x, const std::string& y);

/// Linear extension of the occurrence order of `sigma_std` (u below v when u
/// occurs in v.sigma_std). Among available candidates, from the top down,
/// unknowns (acun index) are placed before restricted atoms and larger names
/// before smaller ones. When the XOR equations are given, a restricted atom
/// is only placed once no remaining row can lead with it; this finds an
/// extension under which the XOR part is solvable whenever one exists.
LinearOrder derive_order(const Substitution& sigma_std, const IndexAssignment& indices,
                         const std::set<std::string>& shared, const std::vector<Equation>* acun_eqs = nullptr);

/// Union of both component unifiers made idempotent.
Substitution combine_unifiers(const Substitution& sigma_std, const Substitution& sigma_acun,
                              const IndexAssignment& indices, const LinearOrder& order);

/// Renames every range variable outside `keep` to _1, _2, ... in order of
/// first occurrence (bindings by domain name, terms in pre-order).
Substitution canonical_rename(const Substitution& sigma, const std::set<std::string>& keep);

struct UnifyOptions {
  bool vi_opt = true;
  std::optional<std::chrono::duration<double>> timeout = std::chrono::seconds(300);
  std::optional<std::size_t> max_solutions;
  /// Called once per visited partition with whether it produced a unifier.
  std::function<void(const Partition&, bool)> on_partition;
};

struct UnifierSet {
  std::vector<Substitution> unifiers;
  bool timed_out = false;
  bool hit_max_solutions = false;
  std::size_t partitions_visited = 0;
  std::size_t partitions_succeeded = 0;

  bool partial() const { return timed_out || hit_max_solutions; }
};

/// Complete set of unifiers, each restricted to the problem variables,
/// canonically renamed and deduplicated.
UnifierSet unify_e(const UnificationProblem& p, const UnifyOptions& opts = {});

}  // namespace xorunify
