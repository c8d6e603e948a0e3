#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "acprg/canonical.hpp"
#include "acprg/decision_tree.hpp"
#include "acprg/formula.hpp"
#include "acprg/restriction.hpp"
#include "acprg/truth_table.hpp"

namespace acprg {

/// A common query tree of depth <= t plus, for each of its leaves (left to right) and each
/// formula, a completion tree of depth <= w for the formula restricted by the leaf's path.
/// Leaf values of the common tree carry no meaning.
struct PartialDtCertificate {
  int w = 0;
  int t = 0;
  DecisionTree common;
  std::vector<std::vector<DecisionTree>> completions;
};

struct PartialDtOptions {
  std::size_t var_cap = 12;
  /// Cut branches where max_i DT(F_i|alpha) - w exceeds the remaining depth.
  bool prune = true;
};

/// Exhaustive search for w-partial depth-t decision trees of a family under rho. Only
/// variables that occur in some restricted formula are ever queried; a query outside that
/// set cannot help any formula.
class PartialDtSolver {
public:
  PartialDtSolver(const std::vector<DnfFormula>& family, const Restriction& rho, int w,
                  PartialDtOptions options = {});

  /// True iff the family under rho has a w-partial decision tree of depth <= t.
  bool feasible(int t);
  /// Same question for the family under rho o extra. `extra` may only fix variables
  /// relevant to the restricted family or variables rho already fixes.
  bool feasible_under(const Restriction& extra, int t);
  std::optional<PartialDtCertificate> certificate(int t);

  const std::vector<std::size_t>& relevant_vars() const noexcept { return vars_; }

private:
  struct Memo {
    int ok_at = 1 << 30;
    int fail_at = -1;
  };
  using State = std::pair<std::uint32_t, std::uint32_t>;  // (fixed mask, values) over vars_

  TruthTable table_under(std::size_t i, State s) const;
  bool all_within_w(State s, int budget, bool* prune_out);
  bool search(State s, int budget);
  DecisionTree build(State s, int budget, std::vector<std::vector<DecisionTree>>& completions);
  State to_state(const Restriction& extra) const;

  int w_;
  PartialDtOptions options_;
  std::vector<std::size_t> vars_;
  std::vector<TruthTable> tables_;
  std::unordered_map<std::uint64_t, Memo> memo_;
};

bool has_w_partial_depth_t_dt(const std::vector<DnfFormula>& family, const Restriction& rho, int w, int t,
                              PartialDtOptions options = {});
bool has_w_partial_depth_t_dt(const std::vector<DnfFormula>& family, int w, int t, PartialDtOptions options = {});

/// Checks every certificate invariant: depths, read-once paths, and that each completion
/// tree computes its formula on every completion of its leaf.
bool validate_certificate(const std::vector<DnfFormula>& family, const Restriction& rho,
                          const PartialDtCertificate& cert);

// Canonical partial decision tree run.

struct PartialRunBlock {
  std::size_t term = 0;
  std::vector<std::size_t> vars;  // ascending
  std::vector<bool> z_values;     // aligned with vars
};

struct PartialRunStep {
  std::size_t formula = 0;
  std::vector<PartialRunBlock> blocks;
  std::vector<std::size_t> queried;  // the set I, ascending
  std::vector<bool> beta;            // aligned with queried
  std::size_t counter = 0;           // counter after this step
};

struct PartialRunRecord {
  std::vector<PartialRunStep> steps;
  std::size_t counter = 0;
  Restriction x;  // rho with every committed beta_I written in
};

/// Runs the canonical partial decision tree on the family under rho: repeatedly select the
/// first formula (from the last selected one on) whose restriction has DT > w, follow its
/// canonical tree on answers from z until it is syntactically constant or the counter
/// reaches t, then query beta on the collected set I and commit it.
PartialRunRecord canonical_partial_dt_run(const std::vector<DnfFormula>& family, const Restriction& rho,
                                          const QueryOracle& z, const QueryOracle& beta, int w, int t);
PartialRunRecord canonical_partial_dt_run(const std::vector<DnfFormula>& family, const Restriction& rho,
                                          const BitVec& z, const BitVec& beta, int w, int t);

nlohmann::json to_json(const PartialRunRecord& rec);

}  // namespace acprg
