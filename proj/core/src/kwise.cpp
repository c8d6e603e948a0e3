#include "acprg/kwise.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "acprg/error.hpp"

namespace acprg {

unsigned field_degree_for(std::size_t n, std::size_t range) {
  const std::size_t top = std::max<std::size_t>({n, range, 2});
  return static_cast<unsigned>(std::bit_width(top - 1));
}

std::size_t KwiseHash::seed_bits(std::size_t n, std::size_t range, std::size_t k, unsigned degree) {
  const unsigned b = degree == 0 ? field_degree_for(n, range) : degree;
  return k * b;
}

KwiseHash KwiseHash::sample(const BitVec& seed, std::size_t offset, std::size_t n, std::size_t range, std::size_t k,
                            unsigned degree) {
  if (range == 0 || !std::has_single_bit(range)) throw MalformedInput("hash range must be a power of two");
  if (k == 0) throw MalformedInput("hash independence must be at least 1");
  const unsigned b = degree == 0 ? field_degree_for(n, range) : degree;
  const unsigned out_bits = static_cast<unsigned>(std::countr_zero(range));
  if (b > Gf2Field::kMaxDegree) throw CapExceeded("hash field degree above 32");
  if ((std::uint64_t{1} << b) < std::max<std::size_t>(n, range))
    throw MalformedInput("field of degree " + std::to_string(b) + " too small for domain and range");
  if (offset + k * b > seed.size()) throw DimensionMismatch("seed too short for hash");
  std::vector<std::uint32_t> coeffs(k);
  for (std::size_t j = 0; j < k; ++j) coeffs[j] = static_cast<std::uint32_t>(seed.read_uint(offset + j * b, b));
  return KwiseHash(Gf2Field(b), std::move(coeffs), n, out_bits);
}

std::uint32_t KwiseHash::operator()(std::uint32_t x) const noexcept {
  std::uint32_t acc = 0;
  for (std::size_t j = coeffs_.size(); j-- > 0;) acc = field_.mul(acc, x) ^ coeffs_[j];
  return out_bits_ == 0 ? 0 : acc & ((std::uint32_t{1} << out_bits_) - 1);
}

std::vector<std::uint32_t> KwiseHash::evaluate_all() const {
  std::vector<std::uint32_t> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)(static_cast<std::uint32_t>(i));
  return out;
}

std::size_t SubsetSampler::seed_bits() const {
  return KwiseHash::seed_bits(n, std::size_t{1} << log2_inv_p, k, degree);
}

IndexSet SubsetSampler::sample(const BitVec& seed, std::size_t offset) const {
  const auto h = KwiseHash::sample(seed, offset, n, std::size_t{1} << log2_inv_p, k, degree);
  BitVec in(n);
  for (std::size_t i = 0; i < n; ++i)
    if (h(static_cast<std::uint32_t>(i)) == 0) in.set(i);
  return IndexSet::from_bits(std::move(in));
}

unsigned dyadic_exponent(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw MalformedInput("probability must lie in (0, 1]");
  int exp = 0;
  const double mant = std::frexp(p, &exp);
  if (mant != 0.5) throw MalformedInput("probability " + std::to_string(p) + " is not a power of two");
  return static_cast<unsigned>(1 - exp);
}

}  // namespace acprg
