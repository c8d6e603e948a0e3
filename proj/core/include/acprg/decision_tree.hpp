#pragma once

#include <cstddef>
#include <cstdint>
#include <list>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "acprg/bits.hpp"
#include "acprg/formula.hpp"
#include "acprg/restriction.hpp"
#include "acprg/truth_table.hpp"

namespace acprg {

/// Binary query tree. Node 0 is the root; an inner node queries `var` and continues at
/// `lo` on 0 and `hi` on 1; a leaf outputs `value`.
class DecisionTree {
public:
  struct Node {
    bool leaf = true;
    bool value = false;
    std::uint32_t var = 0;
    std::uint32_t lo = 0;
    std::uint32_t hi = 0;
  };

  DecisionTree() : nodes_{Node{}} {}
  static DecisionTree leaf(bool value);
  static DecisionTree query(std::uint32_t var, const DecisionTree& lo, const DecisionTree& hi);

  const Node& root() const noexcept { return nodes_[0]; }
  const Node& node(std::uint32_t id) const noexcept { return nodes_[id]; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  std::size_t depth() const;
  std::size_t leaf_count() const;
  /// Follows x from the root; x must fix every queried variable.
  bool eval(const BitVec& x) const;
  bool eval(const Restriction& x) const;
  /// True iff no variable is queried twice on a root-to-leaf path.
  bool is_read_once_per_path() const;

  /// Nested text: a leaf is `0` or `1`, an inner node is `(x<var> <lo> <hi>)`, 0-based.
  std::string to_text() const;
  static DecisionTree from_text(std::string_view text);

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

private:
  std::uint32_t append(const DecisionTree& sub);
  std::vector<Node> nodes_;
};

/// Exact decision-tree depth by bounded minimax over cofactors, memoized on the shrunk
/// truth table with LRU eviction. One oracle per thread.
class DtOracle {
public:
  static constexpr std::size_t kDefaultVarCap = 16;
  static constexpr std::size_t kDefaultMemoEntries = std::size_t{1} << 20;

  explicit DtOracle(std::size_t var_cap = kDefaultVarCap, std::size_t memo_entries = kDefaultMemoEntries)
      : var_cap_(var_cap), memo_cap_(memo_entries) {}

  /// Exact DT depth. Throws CapExceeded if the function depends on more than var_cap variables.
  int depth(const TruthTable& tt);
  /// Exact depth when it is <= limit; otherwise some value > limit.
  int depth_at_most(const TruthTable& tt, int limit);
  /// DT depth of f|rho.
  int depth(const DnfFormula& f, const Restriction& rho);
  int depth_at_most(const DnfFormula& f, const Restriction& rho, int limit);

  /// An optimal tree; variable i of the table is labelled names[i] (identity if empty).
  DecisionTree optimal_tree(const TruthTable& tt, const std::vector<std::size_t>& names = {});
  /// An optimal tree for f|rho labelled with absolute variable indices.
  DecisionTree optimal_tree(const DnfFormula& f, const Restriction& rho);

  std::size_t memo_size() const noexcept { return memo_.size(); }
  std::size_t var_cap() const noexcept { return var_cap_; }
  void clear() { memo_.clear(); lru_.clear(); }

private:
  struct Entry {
    int lower = 0;
    int exact = -1;
    std::list<TruthTable>::iterator lru;
  };
  struct Hash {
    std::size_t operator()(const TruthTable& t) const noexcept { return t.hash(); }
  };

  int solve(const TruthTable& shrunk, int limit);
  bool feasible(const TruthTable& shrunk, int d);
  Entry& lookup(const TruthTable& shrunk);
  DecisionTree build(const TruthTable& tt, const std::vector<std::size_t>& names);

  std::size_t var_cap_;
  std::size_t memo_cap_;
  std::unordered_map<TruthTable, Entry, Hash> memo_;
  std::list<TruthTable> lru_;
};

/// Table of f|rho over the variables of the restricted formula; `vars` receives them.
TruthTable restricted_table(const DnfFormula& f, const Restriction& rho, std::vector<std::size_t>& vars,
                            std::size_t var_cap = DtOracle::kDefaultVarCap);

/// Thread-local oracle used by the free functions below.
DtOracle& thread_dt_oracle();
int dt_depth_exact(const TruthTable& tt);
int dt_depth_exact(const DnfFormula& f, const Restriction& rho);
int dt_depth_exact(const DnfFormula& f);

}  // namespace acprg
