#include "acprg/bits.hpp"

#include <algorithm>
#include <stdexcept>

#include "acprg/error.hpp"

namespace acprg {

BitVec::BitVec(std::size_t n, bool value) : size_(n), words_(words_for(n), value ? ~std::uint64_t{0} : 0) {
  trim();
}

BitVec BitVec::from_words(std::size_t n, std::span<const std::uint64_t> words) {
  BitVec out(n);
  std::copy_n(words.begin(), std::min(words.size(), out.words_.size()), out.words_.begin());
  out.trim();
  return out;
}

BitVec BitVec::from_string(std::string_view bits) {
  BitVec out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      out.set(i);
    else if (bits[i] != '0')
      throw MalformedInput("bit string may only contain 0 and 1");
  }
  return out;
}

BitVec BitVec::from_hex(std::string_view hex, std::size_t n) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.size() * 4 < n) throw MalformedInput("hex string too short for " + std::to_string(n) + " bits");
  BitVec out(n);
  for (std::size_t c = 0; c < hex.size(); ++c) {
    const char ch = hex[c];
    unsigned nibble = 0;
    if (ch >= '0' && ch <= '9')
      nibble = static_cast<unsigned>(ch - '0');
    else if (ch >= 'a' && ch <= 'f')
      nibble = static_cast<unsigned>(ch - 'a' + 10);
    else if (ch >= 'A' && ch <= 'F')
      nibble = static_cast<unsigned>(ch - 'A' + 10);
    else
      throw MalformedInput("invalid hex digit");
    for (unsigned b = 0; b < 4; ++b) {
      const std::size_t i = c * 4 + b;
      const bool bit = (nibble >> (3 - b)) & 1u;
      if (i < n)
        out.set(i, bit);
      else if (bit)
        throw MalformedInput("hex string has set bits past the declared length");
    }
  }
  return out;
}

void BitVec::trim() noexcept {
  if (size_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
}

std::size_t BitVec::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitVec::none() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

static void require_same_size(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("bit vectors differ in length");
}

BitVec& BitVec::operator&=(const BitVec& other) {
  require_same_size(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BitVec& BitVec::operator|=(const BitVec& other) {
  require_same_size(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

BitVec& BitVec::operator^=(const BitVec& other) {
  require_same_size(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVec& BitVec::and_not(const BitVec& other) {
  require_same_size(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

BitVec BitVec::operator~() const {
  BitVec out = *this;
  for (auto& w : out.words_) w = ~w;
  out.trim();
  return out;
}

bool BitVec::is_subset_of(const BitVec& other) const {
  require_same_size(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

std::uint64_t BitVec::read_uint(std::size_t offset, unsigned width) const {
  if (width > 64 || offset + width > size_) throw std::out_of_range("read_uint past end of bit vector");
  std::uint64_t v = 0;
  for (unsigned b = 0; b < width; ++b) v = (v << 1) | static_cast<std::uint64_t>(test(offset + b));
  return v;
}

BitVec BitVec::slice(std::size_t offset, std::size_t length) const {
  if (offset + length > size_) throw std::out_of_range("slice past end of bit vector");
  BitVec out(length);
  if (offset % 64 == 0) {
    std::copy_n(words_.begin() + static_cast<std::ptrdiff_t>(offset / 64), out.words_.size(), out.words_.begin());
    out.trim();
    return out;
  }
  for (std::size_t i = 0; i < length; ++i)
    if (test(offset + i)) out.set(i);
  return out;
}

std::vector<std::size_t> BitVec::ones() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    while (word) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

std::string BitVec::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (test(i)) s[i] = '1';
  return s;
}

std::string BitVec::to_hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve((size_ + 3) / 4);
  for (std::size_t c = 0; c * 4 < size_; ++c) {
    unsigned nibble = 0;
    for (unsigned b = 0; b < 4; ++b) {
      const std::size_t i = c * 4 + b;
      nibble = (nibble << 1) | (i < size_ && test(i) ? 1u : 0u);
    }
    s.push_back(digits[nibble]);
  }
  return s;
}

std::size_t BitVec::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ size_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

BitVec concat(std::span<const BitVec> parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  BitVec out(total);
  std::size_t pos = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p.test(i)) out.set(pos + i);
    pos += p.size();
  }
  return out;
}

}  // namespace acprg
