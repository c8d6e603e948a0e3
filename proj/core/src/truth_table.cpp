#include "acprg/truth_table.hpp"

#include <bit>
#include <string>

#include "acprg/circuit.hpp"
#include "acprg/error.hpp"

namespace acprg {

namespace {

// Positions whose bit v is zero, for v < 6.
constexpr std::uint64_t kLowHalf[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0F0F0F0F0F0F0F0Full,
    0x00FF00FF00FF00FFull, 0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull,
};

// Gathers the 32 entries sitting at kLowHalf[v] positions into the low half.
inline std::uint64_t compress(std::uint64_t x, std::size_t v) noexcept {
  for (std::size_t s = v; s < 5; ++s) x = (x | (x >> (std::size_t{1} << s))) & kLowHalf[s + 1];
  return x;
}

template <typename Eval>
TruthTable tabulate(std::size_t n, Eval&& eval) {
  if (n > TruthTable::kMaxVars) throw CapExceeded("truth table over " + std::to_string(n) + " variables");
  TruthTable tt(n);
  std::vector<std::uint64_t> lanes(n);
  auto words = tt.words();
  const std::uint64_t mask = n >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::size_t{1} << n)) - 1;
  for (std::size_t w = 0; w < words.size(); ++w) {
    fill_enumeration_lanes(lanes, std::uint64_t{w} << 6);
    words[w] = eval(std::span<const std::uint64_t>(lanes)) & mask;
  }
  return tt;
}

}  // namespace

TruthTable::TruthTable(std::size_t vars) : vars_(vars) {
  if (vars > kMaxVars) throw CapExceeded("truth table over " + std::to_string(vars) + " variables");
  words_.assign(vars >= 6 ? (std::size_t{1} << (vars - 6)) : 1, 0);
}

TruthTable TruthTable::constant(std::size_t vars, bool value) {
  TruthTable tt(vars);
  if (value) {
    for (auto& w : tt.words_) w = ~std::uint64_t{0};
    tt.words_[0] &= tt.valid_mask();
  }
  return tt;
}

std::uint64_t TruthTable::valid_mask() const noexcept {
  return vars_ >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::size_t{1} << vars_)) - 1;
}

TruthTable TruthTable::of(const DnfFormula& f, std::span<const std::size_t> vars, const Restriction& rest) {
  if (rest.dimension() != f.dimension()) throw DimensionMismatch("truth table: restriction dimension differs");
  if (vars.size() > kMaxVars) throw CapExceeded("truth table over " + std::to_string(vars.size()) + " variables");
  std::vector<std::uint64_t> lanes(f.dimension(), 0);
  for (std::size_t i = 0; i < f.dimension(); ++i)
    if (rest.is_fixed(i) && rest.value(i)) lanes[i] = ~std::uint64_t{0};
  TruthTable tt(vars.size());
  const std::uint64_t mask = tt.valid_mask();
  for (std::size_t w = 0; w < tt.words_.size(); ++w) {
    fill_enumeration_lanes(lanes, vars, std::uint64_t{w} << 6);
    tt.words_[w] = f.eval_lanes(lanes) & mask;
  }
  return tt;
}

TruthTable TruthTable::of(const DnfFormula& f) {
  return tabulate(f.dimension(), [&](std::span<const std::uint64_t> l) { return f.eval_lanes(l); });
}

TruthTable TruthTable::of(const CnfFormula& h) {
  return tabulate(h.dimension(), [&](std::span<const std::uint64_t> l) { return h.eval_lanes(l); });
}

TruthTable TruthTable::of(const Ac0Circuit& c) {
  return tabulate(c.dimension(), [&](std::span<const std::uint64_t> l) { return c.eval_lanes(l); });
}

std::uint64_t TruthTable::count_ones() const noexcept {
  std::uint64_t c = 0;
  for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

bool TruthTable::is_zero() const noexcept {
  for (auto w : words_)
    if (w) return false;
  return true;
}

bool TruthTable::is_one() const noexcept {
  if (vars_ < 6) return words_[0] == valid_mask();
  for (auto w : words_)
    if (w != ~std::uint64_t{0}) return false;
  return true;
}

TruthTable TruthTable::cofactor(std::size_t var, bool value) const {
  if (var >= vars_) throw std::out_of_range("cofactor variable out of range");
  TruthTable out(vars_ - 1);
  if (var >= 6) {
    const std::size_t b = var - 6;
    const std::size_t low = (std::size_t{1} << b) - 1;
    for (std::size_t j = 0; j < out.words_.size(); ++j) {
      const std::size_t src = ((j & ~low) << 1) | (value ? (std::size_t{1} << b) : 0) | (j & low);
      out.words_[j] = words_[src];
    }
    return out;
  }
  const std::size_t shift = value ? (std::size_t{1} << var) : 0;
  auto half = [&](std::uint64_t w) { return compress((w >> shift) & kLowHalf[var], var); };
  if (words_.size() == 1) {
    out.words_[0] = half(words_[0]);
  } else {
    for (std::size_t j = 0; j < out.words_.size(); ++j)
      out.words_[j] = half(words_[2 * j]) | (half(words_[2 * j + 1]) << 32);
  }
  return out;
}

bool TruthTable::depends_on(std::size_t var) const { return cofactor(var, false) != cofactor(var, true); }

std::vector<std::size_t> TruthTable::relevant_vars() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vars_; ++v)
    if (depends_on(v)) out.push_back(v);
  return out;
}

TruthTable TruthTable::shrink(std::vector<std::size_t>* kept) const {
  TruthTable cur = *this;
  std::vector<std::size_t> names(vars_);
  for (std::size_t i = 0; i < vars_; ++i) names[i] = i;
  for (std::size_t v = vars_; v-- > 0;) {
    auto c0 = cur.cofactor(v, false);
    if (c0 == cur.cofactor(v, true)) {
      cur = std::move(c0);
      names.erase(names.begin() + static_cast<std::ptrdiff_t>(v));
    }
  }
  if (kept) *kept = std::move(names);
  return cur;
}

std::size_t TruthTable::hash() const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ vars_;
  for (auto w : words_) {
    h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h *= 0xBF58476D1CE4E5B9ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 31));
}

}  // namespace acprg
