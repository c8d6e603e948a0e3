#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "acprg/bits.hpp"
#include "acprg/restriction.hpp"

namespace acprg {

struct Literal {
  std::uint32_t var = 0;
  bool negated = false;

  /// The value that makes this literal true.
  bool satisfying_value() const noexcept { return !negated; }
  bool eval(bool x) const noexcept { return x != negated; }
  std::uint64_t eval_lanes(std::uint64_t x) const noexcept { return negated ? ~x : x; }

  /// Signed 1-based DIMACS literal.
  int to_dimacs() const noexcept { return negated ? -static_cast<int>(var + 1) : static_cast<int>(var + 1); }
  static Literal from_dimacs(int lit);

  friend bool operator==(const Literal&, const Literal&) = default;
};

enum class TermStatus : std::uint8_t { Falsified, Satisfied, Live };

/// A conjunction (or, inside a CNF, a disjunction) of literals on distinct variables,
/// kept sorted by variable index.
class Term {
public:
  Term() = default;
  /// Sorts the literals; throws MalformedInput if a variable repeats.
  explicit Term(std::vector<Literal> literals);
  Term(std::initializer_list<Literal> literals) : Term(std::vector<Literal>(literals)) {}

  std::size_t size() const noexcept { return lits_.size(); }
  bool empty() const noexcept { return lits_.empty(); }
  const std::vector<Literal>& literals() const noexcept { return lits_; }
  const Literal& operator[](std::size_t pos) const noexcept { return lits_[pos]; }
  std::uint32_t max_var() const noexcept { return lits_.empty() ? 0 : lits_.back().var; }
  /// Position of `var` in the sorted variable list, or size() if absent.
  std::size_t position_of(std::uint32_t var) const noexcept;

  /// Status as a conjunction under a partial assignment.
  TermStatus status(const Restriction& rho) const noexcept;
  /// Positions whose variable is a star under rho.
  std::vector<std::size_t> unknown_positions(const Restriction& rho) const;

  bool eval_and(const BitVec& x) const noexcept;
  bool eval_or(const BitVec& x) const noexcept;
  std::uint64_t eval_and_lanes(std::span<const std::uint64_t> lanes) const noexcept;
  std::uint64_t eval_or_lanes(std::span<const std::uint64_t> lanes) const noexcept;

  friend bool operator==(const Term&, const Term&) = default;

private:
  std::vector<Literal> lits_;
};

/// Wire count of one bottom gate under the repo's counting rule: a width-1 gate is a
/// bare literal feeding its parent (1 wire), a gate of fan-in c >= 2 has c input wires
/// plus one wire into its parent, an empty gate is a constant feeding its parent.
inline std::size_t bottom_gate_wires(std::size_t fan_in) noexcept { return fan_in <= 1 ? 1 : fan_in + 1; }

struct Measures {
  std::size_t size_wires = 0;
  std::size_t width = 0;
  std::size_t depth = 0;
};

class DnfFormula {
public:
  DnfFormula() = default;
  explicit DnfFormula(std::size_t n) : n_(n) {}
  DnfFormula(std::size_t n, std::vector<Term> terms);

  static DnfFormula constant(std::size_t n, bool value);

  std::size_t dimension() const noexcept { return n_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const Term& term(std::size_t i) const noexcept { return terms_[i]; }
  void add_term(Term term);

  std::size_t width() const noexcept;
  Measures measures() const noexcept;

  bool is_constant_zero() const noexcept { return terms_.empty(); }
  bool is_constant_one() const noexcept;
  bool is_constant() const noexcept { return is_constant_zero() || is_constant_one(); }

  /// Variables occurring in some term, ascending.
  std::vector<std::size_t> support() const;

  /// Throws MalformedInput on a starred or wrong-length input.
  bool eval(const BitVec& x) const;
  bool eval(const Restriction& x) const;
  /// lanes[v] carries variable v for 64 assignments at once.
  std::uint64_t eval_lanes(std::span<const std::uint64_t> lanes) const;

  friend bool operator==(const DnfFormula&, const DnfFormula&) = default;

private:
  void check_term(const Term& term) const;

  std::size_t n_ = 0;
  std::vector<Term> terms_;
};

class CnfFormula {
public:
  CnfFormula() = default;
  explicit CnfFormula(std::size_t n) : n_(n) {}
  CnfFormula(std::size_t n, std::vector<Term> clauses);

  /// A CNF that is identically false (one empty clause).
  static CnfFormula falsum(std::size_t n);

  std::size_t dimension() const noexcept { return n_; }
  std::size_t clause_count() const noexcept { return clauses_.size(); }
  const std::vector<Term>& clauses() const noexcept { return clauses_; }
  const Term& clause(std::size_t i) const noexcept { return clauses_[i]; }
  void add_clause(Term clause);

  std::size_t width() const noexcept;
  Measures measures() const noexcept;

  bool is_constant_one() const noexcept { return clauses_.empty(); }
  bool is_constant_zero() const noexcept;

  bool eval(const BitVec& x) const;
  std::uint64_t eval_lanes(std::span<const std::uint64_t> lanes) const;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

private:
  std::size_t n_ = 0;
  std::vector<Term> clauses_;
};

/// f|rho with term order preserved: falsified terms dropped, fixed-true literals removed,
/// and a satisfied term collapsing the whole formula to the constant 1 (one empty term).
DnfFormula restrict_dnf(const DnfFormula& f, const Restriction& rho);

/// Lanes for the block of 64 consecutive assignments starting at `base` (a multiple of 64)
/// over the variables `vars`: assignment index bit i drives variable vars[i].
void fill_enumeration_lanes(std::span<std::uint64_t> lanes, std::span<const std::size_t> vars,
                            std::uint64_t base);

/// Same, with variable i driven by index bit i for i < lanes.size().
void fill_enumeration_lanes(std::span<std::uint64_t> lanes, std::uint64_t base);

}  // namespace acprg
