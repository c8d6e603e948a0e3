#pragma once

#include <cstddef>
#include <cstdint>

#include "acprg/bits.hpp"

namespace acprg::lab {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Counter-based stream: draw i of stream s under seed k is a pure function of (k, s, i),
/// so any sample can be regenerated without replaying earlier ones.
class CounterRng {
public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(splitmix64(seed ^ splitmix64(stream ^ 0x5851F42D4C957F2Dull))) {}

  constexpr std::uint64_t next() noexcept { return splitmix64(key_ + 0xD1B54A32D192ED03ull * ++counter_); }
  bool bit() noexcept { return next() >> 63; }
  /// Uniform on [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) noexcept {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
      const std::uint64_t v = next();
      if (v < limit) return v % bound;
    }
  }
  /// True with probability exactly 2^-j.
  bool dyadic(unsigned j) noexcept {
    while (j >= 64) {
      if (next() != 0) return false;
      j -= 64;
    }
    return j == 0 || (next() >> (64 - j)) == 0;
  }
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  BitVec bits(std::size_t n) {
    BitVec out(n);
    auto w = out.words();
    for (auto& word : w) word = next();
    return BitVec::from_words(n, w);
  }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace acprg::lab
