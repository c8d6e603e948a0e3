#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace acprg {

/// Fixed-length bit vector packed into 64-bit words. Bit i lives in word i / 64
/// at position i % 64; bits past size() are always zero.
class BitVec {
public:
  BitVec() = default;
  explicit BitVec(std::size_t n, bool value = false);

  static BitVec from_words(std::size_t n, std::span<const std::uint64_t> words);
  /// Parses a string over {0,1}; character i becomes bit i.
  static BitVec from_string(std::string_view bits);
  /// Big-endian hex: bit 0 is the most significant bit of the first nibble.
  static BitVec from_hex(std::string_view hex, std::size_t n);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value = true) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value)
      words_[i >> 6] |= bit;
    else
      words_[i >> 6] &= ~bit;
  }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t count() const noexcept;
  bool none() const noexcept;
  bool any() const noexcept { return !none(); }

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  BitVec& operator&=(const BitVec& other);
  BitVec& operator|=(const BitVec& other);
  BitVec& operator^=(const BitVec& other);
  /// Clears every bit that is set in `other`.
  BitVec& and_not(const BitVec& other);
  BitVec operator~() const;

  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend bool operator==(const BitVec&, const BitVec&) = default;

  /// True iff every set bit of *this is also set in `other`.
  bool is_subset_of(const BitVec& other) const;

  /// Reads `width` bits starting at `offset` as an unsigned integer, first bit most significant.
  std::uint64_t read_uint(std::size_t offset, unsigned width) const;
  BitVec slice(std::size_t offset, std::size_t length) const;

  /// Indices of the set bits in ascending order.
  std::vector<std::size_t> ones() const;

  std::string to_string() const;
  std::string to_hex() const;

  /// The first min(size, 64) bits as an integer with bit i at position i.
  std::uint64_t low_word() const noexcept { return words_.empty() ? 0 : words_[0]; }

  std::size_t hash() const noexcept;

private:
  void trim() noexcept;

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

inline constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

/// Concatenation in order; used to lay out composite seeds.
BitVec concat(std::span<const BitVec> parts);

}  // namespace acprg
