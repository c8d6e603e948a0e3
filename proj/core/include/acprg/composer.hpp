#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "acprg/generator.hpp"
#include "acprg/kwise.hpp"

namespace acprg {

struct ScheduleOverrides {
  std::optional<std::size_t> w;  // rounded up to a power of two
  std::optional<std::size_t> t;
  std::optional<std::size_t> hash_independence;
  std::optional<double> log2_eps_child;
  std::optional<double> log2_eps_noise;

  bool any() const noexcept {
    return w || t || hash_independence || log2_eps_child || log2_eps_noise;
  }
};

struct GeneratorSpec {
  unsigned depth = 2;
  std::uint64_t m = 1;
  std::size_t n = 1;
  std::size_t k = 1;
  double log2_eps = -1.0;
  ScheduleOverrides overrides;
  /// Leaf generator descriptor used at depth 2; a missing "k" is filled from the target error.
  nlohmann::json base = nlohmann::json::object();
  /// Noise generator descriptor for Y; same defaulting rule.
  nlohmann::json noise = nlohmann::json::object();
  /// Replaces the derived child spec when set.
  std::shared_ptr<const GeneratorSpec> child;
};

struct Schedule {
  bool delegate_to_base = false;
  std::size_t w_raw = 0;
  std::size_t w = 0;
  std::size_t t = 0;
  std::size_t hash_independence = 0;  // as scheduled (2t by default)
  std::size_t hash_independence_used = 0;  // clamped to n: n-wise is full independence on [n]
  double log2_eps_child = 0.0;
  double log2_eps_noise = 0.0;
  GeneratorSpec child;
};

/// Derived parameters: w = 40k rounded to a power of two, t = ceil(80 log2(m/eps)),
/// eps' = eps / (w 2^(t+1)), eps_Y = eps / (24m)^(2t), hash independence 2t, child spec
/// (d-1, 2m^2, ceil log2 m, eps'). Overrides replace individual entries.
Schedule derive_schedule(const GeneratorSpec& spec);

struct SeedAccounting {
  std::size_t hash = 0;
  std::size_t noise = 0;
  std::size_t w = 0;
  std::size_t child_each = 0;
  std::size_t children = 0;
  std::size_t total = 0;
  double closed_form = 0.0;
};

/// C (log^2 m + k log^(d-2) m) log(m/eps) max(1, log log m), logs base 2.
double closed_form_seed_bound(const GeneratorSpec& spec, double constant);
inline constexpr double kClosedFormConstant = 64.0;

/// Default leaf/noise generator: descriptor with n filled in, and for kwise without k,
/// independence clamp(ceil(log2 m - log2 eps), 1, n).
GeneratorPtr leaf_generator(const nlohmann::json& descriptor, std::size_t n, std::uint64_t m, double log2_eps);

/// Output_j = Y_j xor (X_{H(j)})_j with H a hash [n] -> [w]. Seed layout:
/// [hash | noise | child_0 | ... | child_{w-1}].
class ComposedGenerator final : public Generator {
public:
  explicit ComposedGenerator(GeneratorSpec spec);

  std::size_t output_bits() const override { return spec_.n; }
  std::size_t seed_bits() const override { return accounting_.total; }
  FoolingClaim claim() const override;
  nlohmann::json descriptor() const override;

  const GeneratorSpec& spec() const noexcept { return spec_; }
  const Schedule& schedule() const noexcept { return schedule_; }
  const SeedAccounting& accounting() const noexcept { return accounting_; }
  const Generator& noise() const noexcept { return *noise_; }
  const Generator& child() const noexcept { return *child_; }
  std::size_t buckets() const noexcept { return schedule_.w; }

  std::size_t hash_offset() const noexcept { return 0; }
  std::size_t noise_offset() const noexcept { return accounting_.hash; }
  std::size_t child_offset(std::size_t i) const noexcept {
    return accounting_.hash + accounting_.noise + i * accounting_.child_each;
  }

  KwiseHash hash_at(const BitVec& seed, std::size_t offset = 0) const;
  /// Hybrid i: buckets 0..i-1 read fresh strings U_0..U_{i-1} from `tape` (i*n bits);
  /// the remaining buckets keep their pseudorandom children.
  BitVec hybrid_generate(std::size_t i, const BitVec& seed, const BitVec& tape) const;
  nlohmann::json layout() const;

protected:
  BitVec do_expand(const BitVec& seed, std::size_t offset) const override;

private:
  BitVec assemble(const BitVec& seed, std::size_t offset, std::size_t hybrid, const BitVec* tape) const;

  GeneratorSpec spec_;
  Schedule schedule_;
  SeedAccounting accounting_;
  GeneratorPtr noise_;
  GeneratorPtr child_;
};

/// Hybrid i as a generator: seed = [composed seed | tape of i*n bits].
class HybridGenerator final : public Generator {
public:
  HybridGenerator(std::shared_ptr<const ComposedGenerator> g, std::size_t i);
  std::size_t output_bits() const override { return g_->output_bits(); }
  std::size_t seed_bits() const override { return g_->seed_bits() + i_ * g_->output_bits(); }
  FoolingClaim claim() const override { return g_->claim(); }
  nlohmann::json descriptor() const override;

protected:
  BitVec do_expand(const BitVec& seed, std::size_t offset) const override;

private:
  std::shared_ptr<const ComposedGenerator> g_;
  std::size_t i_;
};

/// Depth 2 yields the base generator; deeper specs yield a ComposedGenerator.
GeneratorPtr make_generator(const GeneratorSpec& spec);
/// Seed accounting for any spec; depth 2 reports only the base seed.
SeedAccounting seed_length(const GeneratorSpec& spec);

nlohmann::json to_json(const GeneratorSpec& spec);
GeneratorSpec spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Schedule& s);
nlohmann::json to_json(const SeedAccounting& a);

}  // namespace acprg
