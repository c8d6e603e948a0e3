#include "acprg/decision_tree.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "acprg/error.hpp"

namespace acprg {

// DecisionTree

DecisionTree DecisionTree::leaf(bool value) {
  DecisionTree t;
  t.nodes_[0].value = value;
  return t;
}

std::uint32_t DecisionTree::append(const DecisionTree& sub) {
  const auto offset = static_cast<std::uint32_t>(nodes_.size());
  for (Node n : sub.nodes_) {
    if (!n.leaf) {
      n.lo += offset;
      n.hi += offset;
    }
    nodes_.push_back(n);
  }
  return offset;
}

DecisionTree DecisionTree::query(std::uint32_t var, const DecisionTree& lo, const DecisionTree& hi) {
  DecisionTree t;
  t.nodes_[0].leaf = false;
  t.nodes_[0].var = var;
  const auto l = t.append(lo);
  const auto h = t.append(hi);
  t.nodes_[0].lo = l;
  t.nodes_[0].hi = h;
  return t;
}

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> d(nodes_.size(), 0);
  // children always follow their parent
  for (std::size_t i = nodes_.size(); i-- > 0;)
    if (!nodes_[i].leaf) d[i] = 1 + std::max(d[nodes_[i].lo], d[nodes_[i].hi]);
  return d[0];
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.leaf; }));
}

bool DecisionTree::eval(const BitVec& x) const {
  std::uint32_t cur = 0;
  while (!nodes_[cur].leaf) {
    if (nodes_[cur].var >= x.size()) throw DimensionMismatch("tree queries a variable outside the input");
    cur = x.test(nodes_[cur].var) ? nodes_[cur].hi : nodes_[cur].lo;
  }
  return nodes_[cur].value;
}

bool DecisionTree::eval(const Restriction& x) const {
  std::uint32_t cur = 0;
  while (!nodes_[cur].leaf) {
    const auto v = nodes_[cur].var;
    if (v >= x.dimension()) throw DimensionMismatch("tree queries a variable outside the input");
    if (x.is_star(v)) throw OracleError("tree queried unassigned variable " + std::to_string(v));
    cur = x.value(v) ? nodes_[cur].hi : nodes_[cur].lo;
  }
  return nodes_[cur].value;
}

bool DecisionTree::is_read_once_per_path() const {
  std::vector<std::uint32_t> path;
  auto walk = [&](auto&& self, std::uint32_t id) -> bool {
    const Node& n = nodes_[id];
    if (n.leaf) return true;
    if (std::find(path.begin(), path.end(), n.var) != path.end()) return false;
    path.push_back(n.var);
    const bool ok = self(self, n.lo) && self(self, n.hi);
    path.pop_back();
    return ok;
  };
  return walk(walk, 0);
}

std::string DecisionTree::to_text() const {
  std::string out;
  auto emit = [&](auto&& self, std::uint32_t id) -> void {
    const Node& n = nodes_[id];
    if (n.leaf) {
      out += n.value ? '1' : '0';
      return;
    }
    out += "(x" + std::to_string(n.var) + ' ';
    self(self, n.lo);
    out += ' ';
    self(self, n.hi);
    out += ')';
  };
  emit(emit, 0);
  return out;
}

DecisionTree DecisionTree::from_text(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto parse = [&](auto&& self) -> DecisionTree {
    skip();
    if (pos >= text.size()) throw ParseError("unexpected end of tree", 1);
    const char c = text[pos];
    if (c == '0' || c == '1') {
      ++pos;
      return leaf(c == '1');
    }
    if (c != '(') throw ParseError(std::string("unexpected '") + c + "' in tree", 1);
    ++pos;
    skip();
    if (pos >= text.size() || text[pos] != 'x') throw ParseError("expected x<var> after '('", 1);
    ++pos;
    std::uint32_t var = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), var);
    if (ec != std::errc()) throw ParseError("bad variable index in tree", 1);
    pos = static_cast<std::size_t>(ptr - text.data());
    DecisionTree lo = self(self);
    DecisionTree hi = self(self);
    skip();
    if (pos >= text.size() || text[pos] != ')') throw ParseError("expected ')' in tree", 1);
    ++pos;
    return query(var, lo, hi);
  };
  DecisionTree t = parse(parse);
  skip();
  if (pos != text.size()) throw ParseError("trailing characters after tree", 1);
  return t;
}

// DtOracle

DtOracle::Entry& DtOracle::lookup(const TruthTable& shrunk) {
  auto it = memo_.find(shrunk);
  if (it != memo_.end()) {
    lru_.splice(lru_.begin(), lru_, it->second.lru);
    return it->second;
  }
  if (memo_.size() >= memo_cap_ && !lru_.empty()) {
    memo_.erase(lru_.back());
    lru_.pop_back();
  }
  lru_.push_front(shrunk);
  auto [ins, _] = memo_.emplace(shrunk, Entry{0, -1, lru_.begin()});
  return ins->second;
}

bool DtOracle::feasible(const TruthTable& shrunk, int d) {
  for (std::size_t v = 0; v < shrunk.vars(); ++v) {
    if (solve(shrunk.cofactor(v, false), d - 1) > d - 1) continue;
    if (solve(shrunk.cofactor(v, true), d - 1) <= d - 1) return true;
  }
  return false;
}

int DtOracle::solve(const TruthTable& tt, int limit) {
  if (tt.is_constant()) return 0;
  const TruthTable shrunk = tt.shrink();
  const int n = static_cast<int>(shrunk.vars());
  if (static_cast<std::size_t>(n) > var_cap_)
    throw CapExceeded("function depends on " + std::to_string(n) + " variables, cap is " + std::to_string(var_cap_));
  if (n == 1) return 1;
  int lo;
  {
    Entry& e = lookup(shrunk);
    if (e.exact >= 0) return e.exact;
    lo = std::max(e.lower, 1);
  }
  if (lo > limit) return lo;
  for (int d = lo; d <= std::min(limit, n - 1); ++d) {
    if (feasible(shrunk, d)) {
      lookup(shrunk).exact = d;
      return d;
    }
    Entry& e = lookup(shrunk);
    e.lower = std::max(e.lower, d + 1);
  }
  if (limit >= n) {
    lookup(shrunk).exact = n;
    return n;
  }
  return limit + 1;
}

int DtOracle::depth(const TruthTable& tt) { return solve(tt, static_cast<int>(tt.vars())); }

int DtOracle::depth_at_most(const TruthTable& tt, int limit) { return solve(tt, limit); }

TruthTable restricted_table(const DnfFormula& f, const Restriction& rho, std::vector<std::size_t>& vars,
                            std::size_t var_cap) {
  const DnfFormula g = restrict_dnf(f, rho);
  vars = g.support();
  if (vars.size() > var_cap)
    throw CapExceeded("restricted formula has " + std::to_string(vars.size()) + " variables, cap is " +
                      std::to_string(var_cap));
  return TruthTable::of(g, vars, Restriction(f.dimension()));
}

int DtOracle::depth(const DnfFormula& f, const Restriction& rho) {
  std::vector<std::size_t> vars;
  return depth(restricted_table(f, rho, vars, var_cap_));
}

int DtOracle::depth_at_most(const DnfFormula& f, const Restriction& rho, int limit) {
  std::vector<std::size_t> vars;
  return depth_at_most(restricted_table(f, rho, vars, var_cap_), limit);
}

DecisionTree DtOracle::build(const TruthTable& tt, const std::vector<std::size_t>& names) {
  if (tt.is_zero()) return DecisionTree::leaf(false);
  if (tt.is_one()) return DecisionTree::leaf(true);
  std::vector<std::size_t> kept;
  const TruthTable shrunk = tt.shrink(&kept);
  const int d = depth(shrunk);
  for (std::size_t v = 0; v < shrunk.vars(); ++v) {
    auto c0 = shrunk.cofactor(v, false);
    if (solve(c0, d - 1) > d - 1) continue;
    auto c1 = shrunk.cofactor(v, true);
    if (solve(c1, d - 1) > d - 1) continue;
    std::vector<std::size_t> sub;
    for (std::size_t i = 0; i < kept.size(); ++i)
      if (i != v) sub.push_back(names[kept[i]]);
    return DecisionTree::query(static_cast<std::uint32_t>(names[kept[v]]), build(c0, sub), build(c1, sub));
  }
  throw std::logic_error("optimal_tree: no variable attains the computed depth");
}

DecisionTree DtOracle::optimal_tree(const TruthTable& tt, const std::vector<std::size_t>& names) {
  std::vector<std::size_t> labels = names;
  if (labels.empty())
    for (std::size_t i = 0; i < tt.vars(); ++i) labels.push_back(i);
  if (labels.size() != tt.vars()) throw DimensionMismatch("optimal_tree: one name per variable");
  return build(tt, labels);
}

DecisionTree DtOracle::optimal_tree(const DnfFormula& f, const Restriction& rho) {
  std::vector<std::size_t> vars;
  const TruthTable tt = restricted_table(f, rho, vars, var_cap_);
  if (vars.empty()) return DecisionTree::leaf(tt.is_one());
  return optimal_tree(tt, vars);
}

DtOracle& thread_dt_oracle() {
  thread_local DtOracle oracle;
  return oracle;
}

int dt_depth_exact(const TruthTable& tt) { return thread_dt_oracle().depth(tt); }
int dt_depth_exact(const DnfFormula& f, const Restriction& rho) { return thread_dt_oracle().depth(f, rho); }
int dt_depth_exact(const DnfFormula& f) { return thread_dt_oracle().depth(f, Restriction(f.dimension())); }

}  // namespace acprg
