#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "acprg/bits.hpp"
#include "acprg/gf2.hpp"
#include "acprg/restriction.hpp"

namespace acprg {

/// Smallest b >= 1 with 2^b >= max(n, range).
unsigned field_degree_for(std::size_t n, std::size_t range);

/// h(x) = sum_j c_j x^j over GF(2^b), truncated to the low out_bits bits. Inputs are
/// 0..n-1 read as field elements.
class KwiseHash {
public:
  /// Reads k*b seed bits starting at `offset`, big-endian per coefficient, c_0 first.
  /// `range` must be a power of two; `degree` = 0 picks field_degree_for(n, range).
  static KwiseHash sample(const BitVec& seed, std::size_t offset, std::size_t n, std::size_t range, std::size_t k,
                          unsigned degree = 0);
  static std::size_t seed_bits(std::size_t n, std::size_t range, std::size_t k, unsigned degree = 0);

  std::uint32_t operator()(std::uint32_t x) const noexcept;

  std::size_t independence() const noexcept { return coeffs_.size(); }
  std::size_t domain() const noexcept { return n_; }
  std::size_t range() const noexcept { return std::size_t{1} << out_bits_; }
  unsigned out_bits() const noexcept { return out_bits_; }
  const Gf2Field& field() const noexcept { return field_; }
  const std::vector<std::uint32_t>& coefficients() const noexcept { return coeffs_; }

  /// h(0), ..., h(n-1).
  std::vector<std::uint32_t> evaluate_all() const;

private:
  KwiseHash(Gf2Field field, std::vector<std::uint32_t> coeffs, std::size_t n, unsigned out_bits)
      : field_(field), coeffs_(std::move(coeffs)), n_(n), out_bits_(out_bits) {}

  Gf2Field field_;
  std::vector<std::uint32_t> coeffs_;
  std::size_t n_;
  unsigned out_bits_;
};

/// Lambda = {i : h(i) = 0} for a k-wise hash into [2^log2_inv_p], so every i lands in
/// Lambda with probability exactly p = 2^-log2_inv_p.
struct SubsetSampler {
  std::size_t n = 0;
  unsigned log2_inv_p = 0;
  std::size_t k = 1;
  unsigned degree = 0;

  std::size_t seed_bits() const;
  IndexSet sample(const BitVec& seed, std::size_t offset = 0) const;
};

/// Maps a probability p to j with p = 2^-j; throws MalformedInput for non-dyadic p.
unsigned dyadic_exponent(double p);

}  // namespace acprg
