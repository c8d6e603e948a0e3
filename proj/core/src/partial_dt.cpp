#include "acprg/partial_dt.hpp"

#include <algorithm>
#include <bit>

#include "acprg/error.hpp"

namespace acprg {

PartialDtSolver::PartialDtSolver(const std::vector<DnfFormula>& family, const Restriction& rho, int w,
                                 PartialDtOptions options)
    : w_(w), options_(options) {
  if (w < 0) throw MalformedInput("w must be non-negative");
  std::vector<DnfFormula> restricted;
  BitVec relevant(rho.dimension());
  for (const auto& f : family) {
    if (f.dimension() != rho.dimension()) throw DimensionMismatch("family member dimension differs from rho");
    restricted.push_back(restrict_dnf(f, rho));
    for (auto v : restricted.back().support()) relevant.set(v);
  }
  vars_ = relevant.ones();
  if (vars_.size() > options_.var_cap || vars_.size() > 31)
    throw CapExceeded("partial DT search over " + std::to_string(vars_.size()) + " variables, cap is " +
                      std::to_string(options_.var_cap));
  const Restriction none(rho.dimension());
  for (const auto& g : restricted) tables_.push_back(TruthTable::of(g, vars_, none));
}

TruthTable PartialDtSolver::table_under(std::size_t i, State s) const {
  TruthTable t = tables_[i];
  for (std::size_t p = vars_.size(); p-- > 0;)
    if ((s.first >> p) & 1u) t = t.cofactor(p, (s.second >> p) & 1u);
  return t;
}

bool PartialDtSolver::all_within_w(State s, int budget, bool* prune_out) {
  DtOracle& oracle = thread_dt_oracle();
  bool ok = true;
  *prune_out = false;
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    const TruthTable t = table_under(i, s);
    const int limit = options_.prune ? w_ + budget : w_;
    const int d = oracle.depth_at_most(t, limit);
    if (d > w_) {
      ok = false;
      if (!options_.prune) return false;
      if (d > w_ + budget) {
        *prune_out = true;
        return false;
      }
    }
  }
  return ok;
}

bool PartialDtSolver::search(State s, int budget) {
  const std::uint64_t key = (std::uint64_t{s.first} << 32) | s.second;
  {
    const Memo& m = memo_[key];
    if (budget >= m.ok_at) return true;
    if (budget <= m.fail_at) return false;
  }
  auto record = [&](bool ok) {
    Memo& m = memo_[key];
    if (ok)
      m.ok_at = std::min(m.ok_at, budget);
    else
      m.fail_at = std::max(m.fail_at, budget);
    return ok;
  };
  bool pruned = false;
  if (all_within_w(s, budget, &pruned)) return record(true);
  if (budget == 0 || pruned) return record(false);
  for (std::size_t p = 0; p < vars_.size(); ++p) {
    const std::uint32_t bit = std::uint32_t{1} << p;
    if (s.first & bit) continue;
    if (search({s.first | bit, s.second}, budget - 1) && search({s.first | bit, s.second | bit}, budget - 1))
      return record(true);
  }
  return record(false);
}

bool PartialDtSolver::feasible(int t) {
  if (t < 0) throw MalformedInput("t must be non-negative");
  return search({0, 0}, t);
}

PartialDtSolver::State PartialDtSolver::to_state(const Restriction& extra) const {
  State s{0, 0};
  for (std::size_t p = 0; p < vars_.size(); ++p) {
    if (extra.is_fixed(vars_[p])) {
      s.first |= std::uint32_t{1} << p;
      if (extra.value(vars_[p])) s.second |= std::uint32_t{1} << p;
    }
  }
  return s;
}

bool PartialDtSolver::feasible_under(const Restriction& extra, int t) {
  if (t < 0) return false;
  return search(to_state(extra), t);
}

DecisionTree PartialDtSolver::build(State s, int budget, std::vector<std::vector<DecisionTree>>& completions) {
  bool pruned = false;
  if (all_within_w(s, budget, &pruned)) {
    std::vector<std::size_t> names;
    for (std::size_t p = 0; p < vars_.size(); ++p)
      if (!((s.first >> p) & 1u)) names.push_back(vars_[p]);
    std::vector<DecisionTree> leaf;
    for (std::size_t i = 0; i < tables_.size(); ++i)
      leaf.push_back(thread_dt_oracle().optimal_tree(table_under(i, s), names));
    completions.push_back(std::move(leaf));
    return DecisionTree::leaf(false);
  }
  for (std::size_t p = 0; p < vars_.size(); ++p) {
    const std::uint32_t bit = std::uint32_t{1} << p;
    if (s.first & bit) continue;
    const State lo{s.first | bit, s.second}, hi{s.first | bit, s.second | bit};
    if (search(lo, budget - 1) && search(hi, budget - 1)) {
      DecisionTree l = build(lo, budget - 1, completions);
      DecisionTree h = build(hi, budget - 1, completions);
      return DecisionTree::query(static_cast<std::uint32_t>(vars_[p]), l, h);
    }
  }
  throw std::logic_error("partial DT certificate: search and build disagree");
}

std::optional<PartialDtCertificate> PartialDtSolver::certificate(int t) {
  if (!feasible(t)) return std::nullopt;
  PartialDtCertificate cert;
  cert.w = w_;
  cert.t = t;
  cert.common = build({0, 0}, t, cert.completions);
  return cert;
}

bool has_w_partial_depth_t_dt(const std::vector<DnfFormula>& family, const Restriction& rho, int w, int t,
                              PartialDtOptions options) {
  return PartialDtSolver(family, rho, w, options).feasible(t);
}

bool has_w_partial_depth_t_dt(const std::vector<DnfFormula>& family, int w, int t, PartialDtOptions options) {
  if (family.empty()) return true;
  return has_w_partial_depth_t_dt(family, Restriction(family.front().dimension()), w, t, options);
}

namespace {

void collect_tree_vars(const DecisionTree& t, BitVec& out) {
  for (std::size_t i = 0; i < t.node_count(); ++i) {
    const auto& n = t.node(static_cast<std::uint32_t>(i));
    if (!n.leaf && n.var < out.size()) out.set(n.var);
  }
}

bool completion_ok(const DnfFormula& f, const Restriction& at, const DecisionTree& tree, int w) {
  if (static_cast<int>(tree.depth()) > w || !tree.is_read_once_per_path()) return false;
  BitVec free(at.dimension());
  for (auto v : restrict_dnf(f, at).support()) free.set(v);
  collect_tree_vars(tree, free);
  for (std::size_t v = 0; v < at.dimension(); ++v)
    if (free.test(v) && at.is_fixed(v)) free.set(v, false);
  const auto vars = free.ones();
  if (vars.size() > 24) throw CapExceeded("certificate validation over too many free variables");
  Restriction full = at;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << vars.size()); ++a) {
    for (std::size_t i = 0; i < vars.size(); ++i) full.fix(vars[i], (a >> i) & 1u);
    // tree variables outside `vars` are fixed by `at` already
    Restriction probe = full;
    for (std::size_t v = 0; v < probe.dimension(); ++v)
      if (probe.is_star(v)) probe.fix(v, false);
    if (tree.eval(probe) != f.eval(probe)) return false;
  }
  return true;
}

}  // namespace

bool validate_certificate(const std::vector<DnfFormula>& family, const Restriction& rho,
                          const PartialDtCertificate& cert) {
  if (static_cast<int>(cert.common.depth()) > cert.t || !cert.common.is_read_once_per_path()) return false;
  std::size_t leaf_index = 0;
  bool ok = true;
  auto walk = [&](auto&& self, std::uint32_t id, Restriction& at) -> void {
    if (!ok) return;
    const auto& n = cert.common.node(id);
    if (n.leaf) {
      if (leaf_index >= cert.completions.size() || cert.completions[leaf_index].size() != family.size()) {
        ok = false;
        return;
      }
      for (std::size_t i = 0; i < family.size() && ok; ++i)
        ok = completion_ok(family[i], at, cert.completions[leaf_index][i], cert.w);
      ++leaf_index;
      return;
    }
    if (n.var >= at.dimension() || at.is_fixed(n.var)) {
      ok = false;
      return;
    }
    at.fix(n.var, false);
    self(self, n.lo, at);
    at.fix(n.var, true);
    self(self, n.hi, at);
    at.unfix(n.var);
  };
  Restriction at = rho;
  walk(walk, 0, at);
  return ok && leaf_index == cert.completions.size();
}

// Canonical partial decision tree

PartialRunRecord canonical_partial_dt_run(const std::vector<DnfFormula>& family, const Restriction& rho,
                                          const QueryOracle& z, const QueryOracle& beta, int w, int t) {
  for (const auto& f : family)
    if (f.dimension() != rho.dimension()) throw DimensionMismatch("family member dimension differs from rho");
  PartialRunRecord rec;
  Restriction x = rho;
  DtOracle& oracle = thread_dt_oracle();
  std::size_t j = 0;
  const auto budget = static_cast<std::size_t>(std::max(t, 0));
  while (rec.counter < budget) {
    std::size_t i = j;
    while (i < family.size() && oracle.depth_at_most(family[i], x, w) <= w) ++i;
    if (i == family.size()) break;
    const DnfFormula& f = family[i];
    PartialRunStep step;
    step.formula = i;
    Restriction xy = x;
    BitVec in_i(rho.dimension());
    while (rec.counter < budget && !restrict_dnf(f, xy).is_constant()) {
      PartialRunBlock block;
      block.term = next_live_term(f, xy);
      for (const auto& l : f.term(block.term).literals())
        if (xy.is_star(l.var)) block.vars.push_back(l.var);
      for (auto v : block.vars) {
        const bool zv = z(v);
        block.z_values.push_back(zv);
        xy.fix(v, zv);
        in_i.set(v);
      }
      rec.counter += block.vars.size();
      step.blocks.push_back(std::move(block));
    }
    step.queried = in_i.ones();
    for (auto v : step.queried) {
      const bool b = beta(v);
      step.beta.push_back(b);
      x.fix(v, b);
    }
    step.counter = rec.counter;
    rec.steps.push_back(std::move(step));
    j = i;
  }
  rec.x = std::move(x);
  return rec;
}

PartialRunRecord canonical_partial_dt_run(const std::vector<DnfFormula>& family, const Restriction& rho,
                                          const BitVec& z, const BitVec& beta, int w, int t) {
  if (z.size() != rho.dimension() || beta.size() != rho.dimension())
    throw DimensionMismatch("z and beta must be full strings of length n");
  return canonical_partial_dt_run(family, rho, [&](std::size_t v) { return z.test(v); },
                                  [&](std::size_t v) { return beta.test(v); }, w, t);
}

nlohmann::json to_json(const PartialRunRecord& rec) {
  auto bits = [](const std::vector<bool>& b) {
    std::string s;
    for (bool v : b) s += v ? '1' : '0';
    return s;
  };
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : rec.steps) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : s.blocks) blocks.push_back({{"term", b.term}, {"vars", b.vars}, {"z", bits(b.z_values)}});
    steps.push_back({{"formula", s.formula}, {"blocks", blocks}, {"I", s.queried}, {"beta", bits(s.beta)},
                     {"counter", s.counter}});
  }
  return {{"steps", steps}, {"counter", rec.counter}, {"x", rec.x.to_string()}};
}

}  // namespace acprg
