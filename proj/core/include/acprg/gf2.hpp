#pragma once

#include <cstdint>

namespace acprg {

/// GF(2^b) for 1 <= b <= 32 with a fixed irreducible modulus per degree. Elements are
/// the low b bits of a uint32; bit j is the coefficient of x^j.
class Gf2Field {
public:
  static constexpr unsigned kMaxDegree = 32;

  explicit Gf2Field(unsigned degree);

  unsigned degree() const noexcept { return b_; }
  std::uint64_t modulus() const noexcept { return poly_; }
  std::uint64_t order() const noexcept { return std::uint64_t{1} << b_; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t c) const noexcept;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;

private:
  unsigned b_;
  std::uint64_t poly_;
};

/// The modulus used for GF(2^b), including the x^b term.
std::uint64_t irreducible_poly(unsigned degree);

/// Ben-Or test over GF(2); used to check the fixed modulus table.
bool is_irreducible(std::uint64_t poly);

}  // namespace acprg
