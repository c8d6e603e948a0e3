#include "acprg/enumerate.hpp"

#include <vector>

#include "acprg/error.hpp"

namespace acprg {

namespace {

std::uint64_t binom(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a + b < a ? UINT64_MAX : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  return __builtin_mul_overflow(a, b, &out) ? UINT64_MAX : out;
}

// ways[s][r]: partial witnesses of total size s with exactly r steps.
std::vector<std::vector<std::uint64_t>> partial_table(std::size_t k, std::size_t smax) {
  std::vector<std::vector<std::uint64_t>> ways(smax + 1, std::vector<std::uint64_t>(smax + 1, 0));
  ways[0][0] = 1;
  for (std::size_t s = 1; s <= smax; ++s)
    for (std::size_t r = 1; r <= s; ++r)
      for (std::size_t part = 1; part <= std::min(k, s); ++part)
        ways[s][r] = sat_add(ways[s][r], sat_mul(ways[s - part][r - 1], sat_mul(binom(k, part), std::uint64_t{1} << part)));
  return ways;
}

// Subsets of [k] of the given size, in lexicographic order.
void for_each_subset(std::size_t k, std::size_t size, const std::function<void(const std::vector<std::uint8_t>&)>& f) {
  std::vector<std::uint8_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == size) {
      f(cur);
      return;
    }
    for (std::size_t p = start; p + (size - cur.size()) <= k; ++p) {
      cur.push_back(static_cast<std::uint8_t>(p));
      self(self, p + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

void partial_rec(std::size_t k, std::size_t t, std::size_t remaining, PartialWitness& cur,
                 const std::function<void(const PartialWitness&)>& visit) {
  if (remaining == 0) {
    visit(cur);
    return;
  }
  if (cur.r() >= t) return;
  for (std::size_t part = 1; part <= std::min(k, remaining); ++part) {
    for_each_subset(k, part, [&](const std::vector<std::uint8_t>& pos) {
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << part); ++a) {
        cur.steps.push_back(WitnessStep{pos, a});
        partial_rec(k, t, remaining - part, cur, visit);
        cur.steps.pop_back();
      }
    });
  }
}

}  // namespace

std::uint64_t count_partial_witnesses(std::size_t k, std::size_t t, std::size_t s) {
  if (k == 0 || s == 0) return 0;
  const auto ways = partial_table(k, s);
  std::uint64_t total = 0;
  for (std::size_t r = 1; r <= std::min(t, s); ++r) total = sat_add(total, ways[s][r]);
  return total;
}

std::uint64_t for_each_partial_witness(std::size_t k, std::size_t t, std::size_t s,
                                       const std::function<void(const PartialWitness&)>& visit, std::uint64_t limit) {
  if (k > 64) throw CapExceeded("width above 64");
  const std::uint64_t total = count_partial_witnesses(k, t, s);
  if (total > limit) throw CapExceeded("enumeration of " + std::to_string(total) + " partial witnesses exceeds limit");
  if (total == 0) return 0;
  PartialWitness cur;
  std::uint64_t seen = 0;
  partial_rec(k, t, s, cur, [&](const PartialWitness& pw) {
    ++seen;
    visit(pw);
  });
  return seen;
}

std::uint64_t count_global_partial_witnesses(std::size_t m, std::size_t k, std::size_t w, std::size_t t,
                                             std::size_t S) {
  if (m == 0 || k == 0 || S == 0) return 0;
  const std::size_t Rmax = max_global_stages(w, t);
  const auto ways = partial_table(k, S);
  // per[s]: partial witnesses of size s (any r <= s) times the 2^s choices of beta
  std::vector<std::uint64_t> per(S + 1, 0);
  for (std::size_t s = 1; s <= S; ++s) {
    std::uint64_t c = 0;
    for (std::size_t r = 1; r <= s; ++r) c = sat_add(c, ways[s][r]);
    per[s] = sat_mul(c, std::uint64_t{1} << s);
  }
  // stages[R][s]: R stages of total size s
  std::vector<std::vector<std::uint64_t>> stages(Rmax + 1, std::vector<std::uint64_t>(S + 1, 0));
  stages[0][0] = 1;
  for (std::size_t R = 1; R <= Rmax; ++R)
    for (std::size_t s = 1; s <= S; ++s)
      for (std::size_t part = 1; part <= s; ++part)
        stages[R][s] = sat_add(stages[R][s], sat_mul(stages[R - 1][s - part], per[part]));
  std::uint64_t total = 0;
  for (std::size_t R = 1; R <= Rmax; ++R) total = sat_add(total, sat_mul(binom(m + R - 1, R), stages[R][S]));
  return total;
}

std::uint64_t for_each_global_partial_witness(std::size_t m, std::size_t k, std::size_t w, std::size_t t,
                                              std::size_t S,
                                              const std::function<void(const GlobalPartialWitness&)>& visit,
                                              std::uint64_t limit) {
  const std::uint64_t total = count_global_partial_witnesses(m, k, w, t, S);
  if (total > limit) throw CapExceeded("enumeration of " + std::to_string(total) + " global witnesses exceeds limit");
  if (total == 0) return 0;
  const std::size_t Rmax = max_global_stages(w, t);
  GlobalPartialWitness cur;
  std::uint64_t seen = 0;
  // stage sizes first, then formulas, then per-stage contents
  auto fill = [&](auto&& self, std::size_t stage, const std::vector<std::size_t>& sizes) -> void {
    if (stage == sizes.size()) {
      ++seen;
      visit(cur);
      return;
    }
    const std::size_t s = sizes[stage];
    PartialWitness pw;
    partial_rec(k, s, s, pw, [&](const PartialWitness& p) {
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << s); ++b) {
        std::vector<bool> beta(s);
        for (std::size_t q = 0; q < s; ++q) beta[q] = (b >> q) & 1u;
        cur.parts.push_back(p);
        cur.beta.push_back(std::move(beta));
        self(self, stage + 1, sizes);
        cur.parts.pop_back();
        cur.beta.pop_back();
      }
    });
  };
  auto formulas = [&](auto&& self, const std::vector<std::size_t>& sizes) -> void {
    if (cur.formulas.size() == sizes.size()) {
      fill(fill, 0, sizes);
      return;
    }
    const std::size_t lo = cur.formulas.empty() ? 0 : cur.formulas.back();
    for (std::size_t L = lo; L < m; ++L) {
      cur.formulas.push_back(L);
      self(self, sizes);
      cur.formulas.pop_back();
    }
  };
  std::vector<std::size_t> sizes;
  auto compositions = [&](auto&& self, std::size_t remaining) -> void {
    if (remaining == 0) {
      formulas(formulas, sizes);
      return;
    }
    if (sizes.size() >= Rmax) return;
    for (std::size_t part = 1; part <= remaining; ++part) {
      sizes.push_back(part);
      self(self, remaining - part);
      sizes.pop_back();
    }
  };
  compositions(compositions, S);
  return seen;
}

}  // namespace acprg
