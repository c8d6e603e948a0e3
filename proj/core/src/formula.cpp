#include "acprg/formula.hpp"

#include <algorithm>
#include <string>

#include "acprg/error.hpp"

namespace acprg {

namespace {

constexpr std::uint64_t kLanePattern[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

void check_input(const BitVec& x, std::size_t n) {
  if (x.size() != n) throw DimensionMismatch("assignment length " + std::to_string(x.size()) +
                                             " != formula dimension " + std::to_string(n));
}

}  // namespace

Literal Literal::from_dimacs(int lit) {
  if (lit == 0) throw MalformedInput("literal 0 is not a variable");
  return lit > 0 ? Literal{static_cast<std::uint32_t>(lit - 1), false}
                 : Literal{static_cast<std::uint32_t>(-lit - 1), true};
}

Term::Term(std::vector<Literal> literals) : lits_(std::move(literals)) {
  std::sort(lits_.begin(), lits_.end(), [](const Literal& a, const Literal& b) { return a.var < b.var; });
  for (std::size_t i = 1; i < lits_.size(); ++i)
    if (lits_[i].var == lits_[i - 1].var)
      throw MalformedInput("variable " + std::to_string(lits_[i].var + 1) + " repeats in a term");
}

std::size_t Term::position_of(std::uint32_t var) const noexcept {
  auto it = std::lower_bound(lits_.begin(), lits_.end(), var,
                             [](const Literal& l, std::uint32_t v) { return l.var < v; });
  return (it != lits_.end() && it->var == var) ? static_cast<std::size_t>(it - lits_.begin()) : lits_.size();
}

TermStatus Term::status(const Restriction& rho) const noexcept {
  bool live = false;
  for (const auto& l : lits_) {
    if (rho.is_star(l.var)) {
      live = true;
    } else if (rho.value(l.var) == l.negated) {
      return TermStatus::Falsified;
    }
  }
  return live ? TermStatus::Live : TermStatus::Satisfied;
}

std::vector<std::size_t> Term::unknown_positions(const Restriction& rho) const {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < lits_.size(); ++p)
    if (rho.is_star(lits_[p].var)) out.push_back(p);
  return out;
}

bool Term::eval_and(const BitVec& x) const noexcept {
  for (const auto& l : lits_)
    if (!l.eval(x.test(l.var))) return false;
  return true;
}

bool Term::eval_or(const BitVec& x) const noexcept {
  for (const auto& l : lits_)
    if (l.eval(x.test(l.var))) return true;
  return false;
}

std::uint64_t Term::eval_and_lanes(std::span<const std::uint64_t> lanes) const noexcept {
  std::uint64_t acc = ~std::uint64_t{0};
  for (const auto& l : lits_) acc &= l.eval_lanes(lanes[l.var]);
  return acc;
}

std::uint64_t Term::eval_or_lanes(std::span<const std::uint64_t> lanes) const noexcept {
  std::uint64_t acc = 0;
  for (const auto& l : lits_) acc |= l.eval_lanes(lanes[l.var]);
  return acc;
}

// DnfFormula

DnfFormula::DnfFormula(std::size_t n, std::vector<Term> terms) : n_(n) {
  for (const auto& t : terms) check_term(t);
  terms_ = std::move(terms);
}

DnfFormula DnfFormula::constant(std::size_t n, bool value) {
  DnfFormula f(n);
  if (value) f.terms_.emplace_back();
  return f;
}

void DnfFormula::check_term(const Term& term) const {
  if (!term.empty() && term.max_var() >= n_)
    throw MalformedInput("variable " + std::to_string(term.max_var() + 1) + " exceeds n=" + std::to_string(n_));
}

void DnfFormula::add_term(Term term) {
  check_term(term);
  terms_.push_back(std::move(term));
}

std::size_t DnfFormula::width() const noexcept {
  std::size_t k = 0;
  for (const auto& t : terms_) k = std::max(k, t.size());
  return k;
}

Measures DnfFormula::measures() const noexcept {
  Measures m{0, width(), 2};
  for (const auto& t : terms_) m.size_wires += bottom_gate_wires(t.size());
  return m;
}

bool DnfFormula::is_constant_one() const noexcept {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.empty(); });
}

std::vector<std::size_t> DnfFormula::support() const {
  BitVec seen(n_);
  for (const auto& t : terms_)
    for (const auto& l : t.literals()) seen.set(l.var);
  return seen.ones();
}

bool DnfFormula::eval(const BitVec& x) const {
  check_input(x, n_);
  for (const auto& t : terms_)
    if (t.eval_and(x)) return true;
  return false;
}

bool DnfFormula::eval(const Restriction& x) const { return eval(x.assignment()); }

std::uint64_t DnfFormula::eval_lanes(std::span<const std::uint64_t> lanes) const {
  if (lanes.size() < n_) throw DimensionMismatch("fewer lanes than variables");
  std::uint64_t acc = 0;
  for (const auto& t : terms_) {
    acc |= t.eval_and_lanes(lanes);
    if (acc == ~std::uint64_t{0}) break;
  }
  return acc;
}

// CnfFormula

CnfFormula::CnfFormula(std::size_t n, std::vector<Term> clauses) : n_(n) {
  for (auto& c : clauses) add_clause(std::move(c));
}

CnfFormula CnfFormula::falsum(std::size_t n) {
  CnfFormula h(n);
  h.clauses_.emplace_back();
  return h;
}

void CnfFormula::add_clause(Term clause) {
  if (!clause.empty() && clause.max_var() >= n_)
    throw MalformedInput("variable " + std::to_string(clause.max_var() + 1) + " exceeds n=" + std::to_string(n_));
  clauses_.push_back(std::move(clause));
}

std::size_t CnfFormula::width() const noexcept {
  std::size_t k = 0;
  for (const auto& c : clauses_) k = std::max(k, c.size());
  return k;
}

Measures CnfFormula::measures() const noexcept {
  Measures m{0, width(), 2};
  for (const auto& c : clauses_) m.size_wires += bottom_gate_wires(c.size());
  return m;
}

bool CnfFormula::is_constant_zero() const noexcept {
  return std::any_of(clauses_.begin(), clauses_.end(), [](const Term& c) { return c.empty(); });
}

bool CnfFormula::eval(const BitVec& x) const {
  check_input(x, n_);
  for (const auto& c : clauses_)
    if (!c.eval_or(x)) return false;
  return true;
}

std::uint64_t CnfFormula::eval_lanes(std::span<const std::uint64_t> lanes) const {
  if (lanes.size() < n_) throw DimensionMismatch("fewer lanes than variables");
  std::uint64_t acc = ~std::uint64_t{0};
  for (const auto& c : clauses_) {
    acc &= c.eval_or_lanes(lanes);
    if (acc == 0) break;
  }
  return acc;
}

DnfFormula restrict_dnf(const DnfFormula& f, const Restriction& rho) {
  if (rho.dimension() != f.dimension()) throw DimensionMismatch("restrict_dnf: dimensions differ");
  DnfFormula out(f.dimension());
  std::vector<Term> kept;
  for (const auto& t : f.terms()) {
    std::vector<Literal> lits;
    bool dead = false;
    for (const auto& l : t.literals()) {
      if (rho.is_star(l.var)) {
        lits.push_back(l);
      } else if (rho.value(l.var) == l.negated) {
        dead = true;
        break;
      }
    }
    if (dead) continue;
    if (lits.empty()) return DnfFormula::constant(f.dimension(), true);
    kept.emplace_back(std::move(lits));
  }
  return DnfFormula(f.dimension(), std::move(kept));
}

void fill_enumeration_lanes(std::span<std::uint64_t> lanes, std::span<const std::size_t> vars,
                            std::uint64_t base) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i < 6)
      lanes[vars[i]] = kLanePattern[i];
    else
      lanes[vars[i]] = ((base >> i) & 1u) ? ~std::uint64_t{0} : 0;
  }
}

void fill_enumeration_lanes(std::span<std::uint64_t> lanes, std::uint64_t base) {
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    if (i < 6)
      lanes[i] = kLanePattern[i];
    else
      lanes[i] = ((base >> i) & 1u) ? ~std::uint64_t{0} : 0;
  }
}

}  // namespace acprg
