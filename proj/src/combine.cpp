#include "xorunify/combine.hpp"

#include <algorithm>
#include <unordered_map>

#include "xorunify/unify_std.hpp"

namespace xorunify {

// ---------------------------------------------------------------------------
// Purification

namespace {

enum class Side { Neutral, Std, Acun };

Side side_of(const Term& t) {
  if (t.is_var() || t.is_constant()) return Side::Neutral;
  return t.acun_rooted() ? Side::Acun : Side::Std;
}

class Purifier {
 public:
  explicit Purifier(PurifiedProblem& out) : out_(out) {}

  Term pure_std(const Term& t) {
    if (t.is_var() || t.is_constant()) return t;
    if (t.acun_rooted()) return abstract(t);
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(pure_std(a));
    if (t.is_inv()) return Term::inv(args[0]);
    return Term::app(t.name(), std::move(args));
  }

  Term pure_acun(const Term& t) {
    if (t.is_var() || t.is_constant() || t.is_zero()) return t;
    if (t.std_rooted()) return abstract(t);
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(pure_acun(a));
    return Term::xor_of(std::move(args));
  }

  Term fresh_var() { return Term::var(fresh_.next()); }

 private:
  Term abstract(const Term& alien) {
    if (auto it = memo_.find(alien); it != memo_.end()) return Term::var(it->second);
    std::string name = fresh_.next();
    memo_.emplace(alien, name);
    out_.abstraction_map.emplace(name, alien);
    Term v = Term::var(name);
    if (alien.acun_rooted()) {
      out_.acun_eqs.push_back({v, pure_acun(alien)});
    } else {
      out_.std_eqs.push_back({v, pure_std(alien)});
    }
    return v;
  }

  PurifiedProblem& out_;
  FreshNames fresh_;
  std::map<Term, std::string> memo_;
};

std::set<std::string> vars_of(const std::vector<Equation>& eqs) {
  std::set<std::string> out;
  for (const Equation& e : eqs) {
    e.lhs.collect_vars(out);
    e.rhs.collect_vars(out);
  }
  return out;
}

std::set<std::string> intersect(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::set<std::string> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

std::vector<Equation> substitute_all(const Substitution& s, const std::vector<Equation>& eqs) {
  std::vector<Equation> out;
  out.reserve(eqs.size());
  for (const Equation& e : eqs) {
    Equation n{apply_subst(s, e.lhs), apply_subst(s, e.rhs)};
    if (n.lhs == n.rhs) continue;
    if (std::find(out.begin(), out.end(), n) != out.end()) continue;
    out.push_back(std::move(n));
  }
  return out;
}

}  // namespace

PurifiedProblem purify(const UnificationProblem& p) {
  PurifiedProblem out;
  out.original_vars = p.problem_vars;
  Purifier pur(out);
  for (const Equation& e : p.equations) {
    Side l = side_of(e.lhs), r = side_of(e.rhs);
    if (l != Side::Acun && r != Side::Acun) {
      out.std_eqs.push_back({pur.pure_std(e.lhs), pur.pure_std(e.rhs)});
    } else if (l != Side::Std && r != Side::Std) {
      out.acun_eqs.push_back({pur.pure_acun(e.lhs), pur.pure_acun(e.rhs)});
    } else {
      const Term& s = l == Side::Std ? e.lhs : e.rhs;
      const Term& t = l == Side::Std ? e.rhs : e.lhs;
      Term z = pur.fresh_var();
      out.std_eqs.push_back({z, pur.pure_std(s)});
      out.acun_eqs.push_back({z, pur.pure_acun(t)});
    }
  }
  out.shared_vars = intersect(vars_of(out.std_eqs), vars_of(out.acun_eqs));
  return out;
}

// ---------------------------------------------------------------------------
// Partitions

Partition::Partition(std::vector<std::string> vars, std::vector<std::uint32_t> rgs)
    : vars_(std::move(vars)), rgs_(std::move(rgs)) {
  if (vars_.size() != rgs_.size()) throw ContractViolation("partition encoding length mismatch");
  std::uint32_t next = 0;
  for (std::uint32_t b : rgs_) {
    if (b > next) throw ContractViolation("not a restricted growth string");
    if (b == next) ++next;
  }
  blocks_ = next;
}

Partition Partition::discrete(std::vector<std::string> vars) {
  std::vector<std::uint32_t> rgs(vars.size());
  for (std::size_t i = 0; i < rgs.size(); ++i) rgs[i] = static_cast<std::uint32_t>(i);
  return Partition(std::move(vars), std::move(rgs));
}

std::vector<std::vector<std::string>> Partition::blocks() const {
  std::vector<std::vector<std::string>> out(blocks_);
  for (std::size_t i = 0; i < vars_.size(); ++i) out[rgs_[i]].push_back(vars_[i]);
  return out;
}

Substitution Partition::representative_map() const {
  Substitution s;
  for (const auto& block : blocks()) {
    const std::string& rep = *std::min_element(block.begin(), block.end());
    for (const auto& v : block)
      if (v != rep) s.bind(v, Term::var(rep));
  }
  return s;
}

bool Partition::refines(const Partition& coarser) const {
  if (vars_ != coarser.vars_) throw ContractViolation("partitions over different variables");
  std::vector<std::int64_t> image(blocks_, -1);
  for (std::size_t i = 0; i < rgs_.size(); ++i) {
    auto& slot = image[rgs_[i]];
    if (slot < 0) {
      slot = coarser.rgs_[i];
    } else if (slot != coarser.rgs_[i]) {
      return false;
    }
  }
  return true;
}

PartitionEnumerator::PartitionEnumerator(std::vector<std::string> vars)
    : vars_(std::move(vars)), blocks_(vars_.size()) {}

// Successor of cur_ among restricted growth strings with exactly blocks_
// blocks, in lexicographic order.
bool PartitionEnumerator::advance() {
  const std::size_t n = cur_.size();
  std::vector<std::uint32_t> prefix_max(n);
  for (std::size_t i = 0; i < n; ++i) prefix_max[i] = std::max(i ? prefix_max[i - 1] : 0, cur_[i]);
  for (std::size_t i = n; i-- > 1;) {
    const std::uint32_t used = prefix_max[i - 1] + 1;
    for (std::uint32_t v = cur_[i] + 1; v <= used && v < blocks_; ++v) {
      const std::uint32_t have = std::max(used, v + 1);
      const std::size_t rest = n - 1 - i;
      if (have > blocks_ || blocks_ - have > rest) continue;
      cur_[i] = v;
      std::size_t zeros = rest - (blocks_ - have);
      for (std::size_t k = 0; k < rest; ++k)
        cur_[i + 1 + k] = k < zeros ? 0 : static_cast<std::uint32_t>(have + (k - zeros));
      return true;
    }
  }
  return false;
}

bool PartitionEnumerator::pruned(const std::vector<std::uint32_t>& rgs) const {
  for (const auto& pairs : pruned_) {
    bool coarser = true;
    for (auto [i, j] : pairs)
      if (rgs[i] != rgs[j]) {
        coarser = false;
        break;
      }
    if (coarser) return true;
  }
  return false;
}

std::optional<Partition> PartitionEnumerator::next() {
  const std::size_t n = vars_.size();
  while (!done_) {
    if (!started_) {
      started_ = true;
      if (n == 0) {
        done_ = true;
        return Partition(vars_, {});
      }
      cur_.assign(n, 0);
      for (std::size_t k = 0; k + 1 < blocks_; ++k) cur_[n - blocks_ + 1 + k] = static_cast<std::uint32_t>(k + 1);
    } else if (!advance()) {
      if (blocks_ == 1) {
        done_ = true;
        break;
      }
      --blocks_;
      started_ = false;
      continue;
    }
    if (!pruned(cur_)) return Partition(vars_, cur_);
  }
  return std::nullopt;
}

void PartitionEnumerator::prune(const Partition& p) {
  if (p.vars() != vars_) throw ContractViolation("pruning partition over different variables");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<std::int64_t> first(p.block_count(), -1);
  const auto& rgs = p.encoding();
  for (std::uint32_t i = 0; i < rgs.size(); ++i) {
    if (first[rgs[i]] < 0) {
      first[rgs[i]] = i;
    } else {
      pairs.emplace_back(static_cast<std::uint32_t>(first[rgs[i]]), i);
    }
  }
  if (pairs.empty()) done_ = true;  // everything is coarser than the discrete partition
  pruned_.push_back(std::move(pairs));
}

PurifiedProblem apply_partition(const PurifiedProblem& pp, const Partition& p) {
  Substitution rep = p.representative_map();
  PurifiedProblem out;
  out.original_vars = pp.original_vars;
  out.std_eqs = substitute_all(rep, pp.std_eqs);
  out.acun_eqs = substitute_all(rep, pp.acun_eqs);
  for (const auto& [v, t] : pp.abstraction_map) out.abstraction_map.emplace(v, apply_subst(rep, t));
  out.shared_vars = intersect(vars_of(out.std_eqs), vars_of(out.acun_eqs));
  return out;
}

// ---------------------------------------------------------------------------
// Indices and order

IndexDerivation derive_indices(const Substitution& sigma_std, const std::set<std::string>& shared) {
  IndexDerivation out;
  std::set<std::string> paired;
  for (const auto& v : shared) {
    const Term* b = sigma_std.find(v);
    if (!b) continue;
    if (b->is_var())
      throw ContractViolation("variable binding " + v + " |-> " + b->name() + " must be propagated first");
    if (b->is_inv() && b->arg(0).is_var() && !sigma_std.binds(b->arg(0).name())) {
      out.branch_pairs.emplace_back(v, b->arg(0).name());
      paired.insert(v);
      paired.insert(b->arg(0).name());
    } else {
      out.forced[v] = TheoryIndex::Std;
    }
  }
  for (const auto& v : shared)
    if (!sigma_std.binds(v) && !paired.count(v)) out.forced[v] = TheoryIndex::Acun;
  return out;
}

Substitution reorient_inv_pair(const Substitution& sigma_std, const std::string& x, const std::string& y) {
  const Term* b = sigma_std.find(x);
  if (!b || !b->is_inv() || !b->arg(0).is_var() || b->arg(0).name() != y)
    throw ContractViolation("not an inv pair: " + x + ", " + y);
  Substitution swap;
  swap.bind(y, Term::inv(Term::var(x)));
  Substitution out;
  for (const auto& [v, t] : sigma_std)
    if (v != x) out.bind(v, apply_subst(swap, t));
  out.bind(y, Term::inv(Term::var(x)));
  return out;
}

namespace {

bool is_unknown(const IndexAssignment& indices, const std::string& v) {
  auto it = indices.find(v);
  return it == indices.end() || it->second == TheoryIndex::Acun;
}

// Incremental elimination for placing columns from the left.
class ColumnPlacer {
 public:
  explicit ColumnPlacer(const std::vector<Equation>& eqs) {
    std::set<std::string> names;
    for (const Equation& e : eqs) {
      std::vector<std::string> vs;
      e.lhs.vars_in_order(vs);
      e.rhs.vars_in_order(vs);
      names.insert(vs.begin(), vs.end());
      collect_constants(e.lhs, names);
      collect_constants(e.rhs, names);
    }
    for (const auto& n : names) {
      index_.emplace(n, columns_.size());
      columns_.push_back({n, ColumnKind::Unknown, false});
    }
    rows_ = encode_rows(eqs, columns_);
  }

  /// True if no remaining row has this column set.
  bool clear(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return true;
    for (const BitRow& r : rows_)
      if (r.test(it->second)) return false;
    return true;
  }

  /// Places an unknown: pivots on it if some remaining row contains it.
  void place_unknown(const std::string& name) {
    auto it = index_.find(name);
    if (it == index_.end()) return;
    std::size_t c = it->second;
    auto pivot = std::find_if(rows_.begin(), rows_.end(), [&](const BitRow& r) { return r.test(c); });
    if (pivot == rows_.end()) return;
    BitRow p = *pivot;
    rows_.erase(pivot);
    for (BitRow& r : rows_)
      if (r.test(c)) r ^= p;
  }

 private:
  static void collect_constants(const Term& t, std::set<std::string>& out) {
    if (t.is_constant()) out.insert(t.name());
    if (t.is_xor())
      for (const Term& a : t.args()) collect_constants(a, out);
  }

  std::vector<Column> columns_;
  std::map<std::string, std::size_t> index_;
  std::vector<BitRow> rows_;
};

}  // namespace

LinearOrder derive_order(const Substitution& sigma_std, const IndexAssignment& indices,
                         const std::set<std::string>& shared, const std::vector<Equation>* acun_eqs) {
  // above[u]: shared v with u occurring in v.sigma.
  std::map<std::string, std::vector<std::string>> above;
  for (const auto& v : shared) {
    const Term* b = sigma_std.find(v);
    if (!b) continue;
    for (const auto& u : b->vars()) {
      if (!shared.count(u)) continue;
      if (u == v) throw ContractViolation("cyclic occurrence relation at " + v);
      above[u].push_back(v);
    }
  }
  // Top-down placement: v is available once everything above it is placed.
  std::map<std::string, std::size_t> waiting;
  for (const auto& v : shared) waiting[v] = above[v].size();

  std::optional<ColumnPlacer> placer;
  if (acun_eqs) {
    placer.emplace(*acun_eqs);
    std::set<std::string> unrestricted;
    for (const Equation& e : *acun_eqs) {
      e.lhs.collect_vars(unrestricted);
      e.rhs.collect_vars(unrestricted);
    }
    for (const auto& u : unrestricted)
      if (!shared.count(u)) placer->place_unknown(u);
  }

  std::vector<std::string> top_down;
  std::set<std::string> placed;
  while (top_down.size() < shared.size()) {
    std::vector<std::string> avail;
    for (auto it = shared.rbegin(); it != shared.rend(); ++it)
      if (!placed.count(*it) && waiting[*it] == 0) avail.push_back(*it);
    if (avail.empty()) throw ContractViolation("cyclic occurrence relation");
    std::stable_partition(avail.begin(), avail.end(), [&](const std::string& v) { return is_unknown(indices, v); });
    std::string pick = avail.front();
    if (placer) {
      for (const auto& v : avail)
        if (is_unknown(indices, v) || placer->clear(v)) {
          pick = v;
          break;
        }
      if (is_unknown(indices, pick)) placer->place_unknown(pick);
    }
    top_down.push_back(pick);
    placed.insert(pick);
    if (const Term* b = sigma_std.find(pick))
      for (const auto& u : b->vars())
        if (shared.count(u)) --waiting[u];
  }
  return LinearOrder(std::vector<std::string>(top_down.rbegin(), top_down.rend()));
}

Substitution combine_unifiers(const Substitution& sigma_std, const Substitution& sigma_acun,
                              const IndexAssignment& indices, const LinearOrder& order) {
  Substitution::Map merged(sigma_std.bindings());
  for (const auto& [v, t] : sigma_acun) {
    if (sigma_std.binds(v)) throw ContractViolation("variable bound by both components: " + v);
    merged.emplace(v, t);
  }
  for (const auto& [v, idx] : indices) {
    if (!order.contains(v)) throw ContractViolation("shared variable missing from order: " + v);
    if (idx == TheoryIndex::Std && sigma_acun.binds(v))
      throw ContractViolation("XOR solver bound std-indexed variable " + v);
    if (idx == TheoryIndex::Acun && sigma_std.binds(v))
      throw ContractViolation("std solver bound acun-indexed variable " + v);
  }
  try {
    return resolve(Substitution(std::move(merged)));
  } catch (const CompositionCycle& e) {
    throw ContractViolation(std::string("component unifiers do not respect the order: ") + e.what());
  }
}

Substitution canonical_rename(const Substitution& sigma, const std::set<std::string>& keep) {
  std::vector<std::string> seen;
  for (const auto& [v, t] : sigma) t.vars_in_order(seen);
  Substitution renaming;
  std::size_t k = 0;
  for (const auto& v : seen)
    if (!keep.count(v)) renaming.bind(v, Term::var(std::string(1, FreshNames::kPrefix) + std::to_string(++k)));
  if (renaming.empty()) return sigma;
  Substitution out;
  for (const auto& [v, t] : sigma) out.bind(v, apply_subst(renaming, t));
  return out;
}

// ---------------------------------------------------------------------------
// Main loop

namespace {

std::size_t hash_subst(const Substitution& s) {
  std::size_t h = s.size();
  for (const auto& [v, t] : s) h = h * 1000003u ^ std::hash<std::string>{}(v) ^ (t.hash() << 1);
  return h;
}

class ResultSet {
 public:
  bool add(Substitution s) {
    auto& bucket = by_hash_[hash_subst(s)];
    for (std::size_t i : bucket)
      if (items_[i] == s) return false;
    bucket.push_back(items_.size());
    items_.push_back(std::move(s));
    return true;
  }
  std::size_t size() const { return items_.size(); }
  std::vector<Substitution> take() { return std::move(items_); }

 private:
  std::vector<Substitution> items_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> by_hash_;
};

struct Grouped {
  std::vector<Equation> acun_eqs;
  std::set<std::string> shared;
};

// Variables the std mgu maps to the same term are equal in every solution;
// rewrite the XOR side to use one representative per class. Class members
// bound to a variable w are represented by w itself.
Grouped group_forced_equalities(const Substitution& sigma, const std::vector<Equation>& acun_eqs) {
  std::set<std::string> acun_vars = vars_of(acun_eqs);
  std::map<Term, std::vector<std::string>> classes;
  for (const auto& v : acun_vars) {
    const Term* b = sigma.find(v);
    classes[b ? *b : Term::var(v)].push_back(v);
  }
  Substitution iota;
  for (const auto& [image, members] : classes) {
    std::string rep = image.is_var() ? image.name() : members.front();
    for (const auto& m : members)
      if (m != rep) iota.bind(m, Term::var(rep));
  }
  Grouped g;
  g.acun_eqs = substitute_all(iota, acun_eqs);
  std::set<std::string> std_side;
  for (const auto& [v, t] : sigma) {
    if (t.is_var()) continue;
    std_side.insert(v);
    t.collect_vars(std_side);
  }
  g.shared = intersect(vars_of(g.acun_eqs), std_side);
  return g;
}

}  // namespace

UnifierSet unify_e(const UnificationProblem& p, const UnifyOptions& opts) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto out_of_time = [&] { return opts.timeout && Clock::now() - start > *opts.timeout; };

  UnifierSet result;
  ResultSet found;
  PurifiedProblem pp = purify(p);
  PartitionEnumerator partitions(std::vector<std::string>(pp.shared_vars.begin(), pp.shared_vars.end()));

  while (auto part = partitions.next()) {
    if (out_of_time()) {
      result.timed_out = true;
      break;
    }
    ++result.partitions_visited;
    bool success = false;

    PurifiedProblem q = apply_partition(pp, *part);
    if (auto sigma = unify_std(q.std_eqs)) {
      Grouped g = group_forced_equalities(*sigma, q.acun_eqs);
      IndexDerivation d = derive_indices(*sigma, g.shared);
      const std::size_t branches = std::size_t{1} << d.branch_pairs.size();
      for (std::size_t mask = 0; mask < branches; ++mask) {
        Substitution sigma_b = *sigma;
        IndexAssignment indices = d.forced;
        for (std::size_t i = 0; i < d.branch_pairs.size(); ++i) {
          const auto& [x, y] = d.branch_pairs[i];
          const bool flip = (mask >> i) & 1U;
          if (flip) sigma_b = reorient_inv_pair(sigma_b, x, y);
          indices[x] = flip ? TheoryIndex::Acun : TheoryIndex::Std;
          if (g.shared.count(y)) indices[y] = flip ? TheoryIndex::Std : TheoryIndex::Acun;
        }
        LinearOrder order = derive_order(sigma_b, indices, g.shared, &g.acun_eqs);
        GF2System sys = to_gf2_system(g.acun_eqs, indices, order);
        auto sigma_a = solve_acun_lcr(sys, order);
        if (!sigma_a) continue;

        Substitution combined = combine_unifiers(sigma_b, *sigma_a, indices, order);
        Substitution rep = part->representative_map();
        Substitution full = resolve(Substitution([&] {
          Substitution::Map m(combined.bindings());
          for (const auto& [v, t] : rep) m.emplace(v, t);
          return m;
        }()));
        Substitution restricted;
        for (const auto& v : pp.original_vars)
          if (const Term* b = full.find(v)) restricted.bind(v, *b);
        success = true;
        if (found.add(canonical_rename(restricted, pp.original_vars)) && opts.max_solutions &&
            found.size() >= *opts.max_solutions) {
          result.hit_max_solutions = true;
          break;
        }
      }
    }

    if (success) ++result.partitions_succeeded;
    if (opts.on_partition) opts.on_partition(*part, success);
    if (result.hit_max_solutions) break;
    if (success && opts.vi_opt) partitions.prune(*part);
  }
  result.unifiers = found.take();
  return result;
}

}  // namespace xorunify
