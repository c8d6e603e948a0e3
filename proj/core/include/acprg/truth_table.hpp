#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "acprg/formula.hpp"

namespace acprg {

class Ac0Circuit;

/// Truth table of a function on `vars` variables: entry x sits at bit x % 64 of word
/// x / 64, and bit i of x is variable i. Tables below 64 entries use one word with the
/// unused high bits kept zero.
class TruthTable {
public:
  static constexpr std::size_t kMaxVars = 30;

  TruthTable() : TruthTable(0) {}
  explicit TruthTable(std::size_t vars);
  static TruthTable constant(std::size_t vars, bool value);

  /// Table of f over the listed variables with every other variable fixed by `rest`
  /// (stars outside `vars` are not allowed).
  static TruthTable of(const DnfFormula& f, std::span<const std::size_t> vars, const Restriction& rest);
  /// Table of f over all of its n variables.
  static TruthTable of(const DnfFormula& f);
  static TruthTable of(const CnfFormula& h);
  static TruthTable of(const Ac0Circuit& c);

  std::size_t vars() const noexcept { return vars_; }
  std::size_t entries() const noexcept { return std::size_t{1} << vars_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  bool get(std::uint64_t x) const noexcept { return (words_[x >> 6] >> (x & 63)) & 1u; }
  void set(std::uint64_t x, bool v) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (x & 63);
    if (v)
      words_[x >> 6] |= bit;
    else
      words_[x >> 6] &= ~bit;
  }

  std::uint64_t count_ones() const noexcept;
  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  bool is_constant() const noexcept { return is_zero() || is_one(); }

  /// The table with variable `var` fixed to `value` and removed (higher variables shift down).
  TruthTable cofactor(std::size_t var, bool value) const;
  bool depends_on(std::size_t var) const;
  /// Indices of variables the function depends on.
  std::vector<std::size_t> relevant_vars() const;
  /// Removes irrelevant variables; `kept` receives the surviving original indices.
  TruthTable shrink(std::vector<std::size_t>* kept = nullptr) const;

  std::size_t hash() const noexcept;
  friend bool operator==(const TruthTable&, const TruthTable&) = default;

private:
  std::uint64_t valid_mask() const noexcept;

  std::size_t vars_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace acprg
