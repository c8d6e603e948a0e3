#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "acprg/bits.hpp"
#include "acprg/truth_table.hpp"

namespace acprg {

/// What a generator declares it fools: a function class, a size parameter, an error.
struct FoolingClaim {
  std::string function_class;
  std::size_t size = 0;
  double error = 0.0;
};

/// Deterministic map from seed_bits() seed bits to output_bits() output bits.
class Generator {
public:
  virtual ~Generator() = default;

  virtual std::size_t output_bits() const = 0;
  virtual std::size_t seed_bits() const = 0;
  virtual FoolingClaim claim() const = 0;
  virtual nlohmann::json descriptor() const = 0;

  /// Throws DimensionMismatch when the seed length differs from seed_bits().
  BitVec expand(const BitVec& seed) const;
  /// Reads the seed from `offset` inside a longer string.
  BitVec expand_at(const BitVec& seed, std::size_t offset) const;

protected:
  virtual BitVec do_expand(const BitVec& seed, std::size_t offset) const = 0;
};

using GeneratorPtr = std::shared_ptr<const Generator>;

/// Output = seed.
class UniformGenerator final : public Generator {
public:
  explicit UniformGenerator(std::size_t n) : n_(n) {}
  std::size_t output_bits() const override { return n_; }
  std::size_t seed_bits() const override { return n_; }
  FoolingClaim claim() const override { return {"all", n_, 0.0}; }
  nlohmann::json descriptor() const override;

protected:
  BitVec do_expand(const BitVec& seed, std::size_t offset) const override;

private:
  std::size_t n_;
};

/// Seedless all-zeros string.
class ZeroGenerator final : public Generator {
public:
  explicit ZeroGenerator(std::size_t n) : n_(n) {}
  std::size_t output_bits() const override { return n_; }
  std::size_t seed_bits() const override { return 0; }
  FoolingClaim claim() const override { return {"none", 0, 1.0}; }
  nlohmann::json descriptor() const override;

protected:
  BitVec do_expand(const BitVec&, std::size_t) const override { return BitVec(n_); }

private:
  std::size_t n_;
};

/// Bit i is the low bit of a k-wise independent hash evaluated at i.
class KwiseGenerator final : public Generator {
public:
  KwiseGenerator(std::size_t n, std::size_t k);
  std::size_t output_bits() const override { return n_; }
  std::size_t seed_bits() const override;
  FoolingClaim claim() const override { return {"functions of at most k bits", k_, 0.0}; }
  nlohmann::json descriptor() const override;
  std::size_t independence() const noexcept { return k_; }

protected:
  BitVec do_expand(const BitVec& seed, std::size_t offset) const override;

private:
  std::size_t n_, k_;
};

/// Powering small-bias space: seed (x, y) in GF(2^b)^2, bit i = <x^i, y>. Every nonzero
/// parity has bias at most (n-1)/2^b.
class SmallBiasGenerator final : public Generator {
public:
  SmallBiasGenerator(std::size_t n, unsigned b);
  std::size_t output_bits() const override { return n_; }
  std::size_t seed_bits() const override { return 2 * std::size_t{b_}; }
  FoolingClaim claim() const override;
  nlohmann::json descriptor() const override;
  double declared_bias() const noexcept;

protected:
  BitVec do_expand(const BitVec& seed, std::size_t offset) const override;

private:
  std::size_t n_;
  unsigned b_;
};

/// XOR of independent parts; the seed is the concatenation of the parts' seeds.
class XorGenerator final : public Generator {
public:
  explicit XorGenerator(std::vector<GeneratorPtr> parts);
  std::size_t output_bits() const override { return n_; }
  std::size_t seed_bits() const override { return seed_; }
  FoolingClaim claim() const override;
  nlohmann::json descriptor() const override;

protected:
  BitVec do_expand(const BitVec& seed, std::size_t offset) const override;

private:
  std::vector<GeneratorPtr> parts_;
  std::size_t n_ = 0, seed_ = 0;
};

/// Seed of `bits` bits whose big-endian integer value is v.
BitVec seed_from_integer(std::uint64_t v, std::size_t bits);

struct BiasOptions {
  bool allow_monte_carlo = false;
  std::uint64_t samples = 1'000'000;
  std::uint64_t rng_seed = 1;
  std::size_t exhaustive_cap_bits = 26;
  double confidence = 0.99;
  std::size_t workers = 0;  // 0: worker_count()
};

/// |E_seed f(G(seed)) - E_uniform f|. Exhaustive runs report bias exactly (lower = upper
/// = bias); Monte Carlo runs bound it from the Clopper-Pearson interval on E f(G).
struct BiasEstimate {
  bool exhaustive = true;
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double uniform_mean = 0.0;
  double bias = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// f is a table over the generator's output bits (at most 30). Throws CapExceeded when
/// the seed space exceeds 2^exhaustive_cap_bits and Monte Carlo is not allowed.
BiasEstimate bias_exhaustive(const Generator& g, const TruthTable& f, const BiasOptions& opts = {});
/// One pass over the seeds shared by every table.
std::vector<BiasEstimate> bias_many(const Generator& g, std::span<const TruthTable> fs, const BiasOptions& opts = {});

nlohmann::json to_json(const BiasEstimate& b);

}  // namespace acprg
