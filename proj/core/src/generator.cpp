#include "acprg/generator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "acprg/error.hpp"
#include "acprg/gf2.hpp"
#include "acprg/kwise.hpp"
#include "acprg/lab/rng.hpp"
#include "acprg/lab/stats.hpp"
#include "acprg/parallel.hpp"

namespace acprg {

BitVec Generator::expand(const BitVec& seed) const {
  if (seed.size() != seed_bits())
    throw DimensionMismatch("seed has " + std::to_string(seed.size()) + " bits, generator needs " +
                            std::to_string(seed_bits()));
  return do_expand(seed, 0);
}

BitVec Generator::expand_at(const BitVec& seed, std::size_t offset) const {
  if (offset + seed_bits() > seed.size()) throw DimensionMismatch("seed slice runs past the end of the seed");
  return do_expand(seed, offset);
}

nlohmann::json UniformGenerator::descriptor() const { return {{"type", "uniform"}, {"n", n_}}; }

BitVec UniformGenerator::do_expand(const BitVec& seed, std::size_t offset) const {
  return offset == 0 && seed.size() == n_ ? seed : seed.slice(offset, n_);
}

nlohmann::json ZeroGenerator::descriptor() const { return {{"type", "zero"}, {"n", n_}}; }

KwiseGenerator::KwiseGenerator(std::size_t n, std::size_t k) : n_(n), k_(k) {
  if (k == 0) throw MalformedInput("kwise generator needs k >= 1");
}

std::size_t KwiseGenerator::seed_bits() const { return KwiseHash::seed_bits(n_, 2, k_); }

nlohmann::json KwiseGenerator::descriptor() const { return {{"type", "kwise"}, {"n", n_}, {"k", k_}}; }

BitVec KwiseGenerator::do_expand(const BitVec& seed, std::size_t offset) const {
  const auto h = KwiseHash::sample(seed, offset, n_, 2, k_);
  BitVec out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    if (h(static_cast<std::uint32_t>(i))) out.set(i);
  return out;
}

SmallBiasGenerator::SmallBiasGenerator(std::size_t n, unsigned b) : n_(n), b_(b) {
  if (b == 0 || b > Gf2Field::kMaxDegree) throw MalformedInput("smallbias field degree must be in [1, 32]");
}

double SmallBiasGenerator::declared_bias() const noexcept {
  return n_ <= 1 ? 0.0 : std::min(1.0, static_cast<double>(n_ - 1) / std::ldexp(1.0, static_cast<int>(b_)));
}

FoolingClaim SmallBiasGenerator::claim() const { return {"parities", n_, declared_bias()}; }

nlohmann::json SmallBiasGenerator::descriptor() const { return {{"type", "smallbias"}, {"n", n_}, {"b", b_}}; }

BitVec SmallBiasGenerator::do_expand(const BitVec& seed, std::size_t offset) const {
  const Gf2Field field(b_);
  const auto x = static_cast<std::uint32_t>(seed.read_uint(offset, b_));
  const auto y = static_cast<std::uint32_t>(seed.read_uint(offset + b_, b_));
  BitVec out(n_);
  std::uint32_t power = 1;
  for (std::size_t i = 0; i < n_; ++i) {
    if (std::popcount(power & y) & 1) out.set(i);
    power = field.mul(power, x);
  }
  return out;
}

XorGenerator::XorGenerator(std::vector<GeneratorPtr> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw MalformedInput("xor generator needs at least one part");
  n_ = parts_.front()->output_bits();
  for (const auto& p : parts_) {
    if (p->output_bits() != n_) throw DimensionMismatch("xor parts differ in output length");
    seed_ += p->seed_bits();
  }
}

FoolingClaim XorGenerator::claim() const {
  // XOR with independent strings never hurts a parity or junta guarantee of either part.
  FoolingClaim best = parts_.front()->claim();
  for (const auto& p : parts_) {
    const auto c = p->claim();
    if (c.error < best.error || (c.error == best.error && c.size > best.size)) best = c;
  }
  return best;
}

nlohmann::json XorGenerator::descriptor() const {
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& p : parts_) parts.push_back(p->descriptor());
  return {{"type", "xor"}, {"n", n_}, {"parts", parts}};
}

BitVec XorGenerator::do_expand(const BitVec& seed, std::size_t offset) const {
  BitVec out(n_);
  for (const auto& p : parts_) {
    out ^= p->expand_at(seed, offset);
    offset += p->seed_bits();
  }
  return out;
}

BitVec seed_from_integer(std::uint64_t v, std::size_t bits) {
  BitVec out(bits);
  for (std::size_t j = 0; j < bits && j < 64; ++j)
    if ((v >> (bits - 1 - j)) & 1u) out.set(j);
  return out;
}

std::vector<BiasEstimate> bias_many(const Generator& g, std::span<const TruthTable> fs, const BiasOptions& opts) {
  const std::size_t n = g.output_bits();
  if (n > TruthTable::kMaxVars) throw CapExceeded("bias check supports at most 30 output bits");
  for (const auto& f : fs)
    if (f.vars() != n) throw DimensionMismatch("table arity differs from generator output length");
  const std::size_t s = g.seed_bits();
  const bool exhaustive = s <= opts.exhaustive_cap_bits;
  if (!exhaustive && !opts.allow_monte_carlo)
    throw CapExceeded("seed space of " + std::to_string(s) + " bits exceeds exhaustive cap; enable Monte Carlo");
  const std::uint64_t trials = exhaustive ? std::uint64_t{1} << s : opts.samples;
  if (trials == 0) throw MalformedInput("zero samples");

  const std::size_t workers = opts.workers ? opts.workers : worker_count();
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::uint64_t>(workers, trials));
  std::vector<std::vector<std::uint64_t>> hits(chunks, std::vector<std::uint64_t>(fs.size(), 0));
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  parallel_chunks(
      trials,
      [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        auto& h = hits[chunk];
        for (std::size_t i = begin; i < end; ++i) {
          BitVec seed;
          if (exhaustive) {
            seed = seed_from_integer(i, s);
          } else {
            lab::CounterRng rng(opts.rng_seed, i);
            seed = rng.bits(s);
          }
          const std::uint64_t x = g.expand(seed).low_word() & mask;
          for (std::size_t f = 0; f < fs.size(); ++f) h[f] += fs[f].get(x);
        }
      },
      chunks);

  std::vector<BiasEstimate> out(fs.size());
  for (std::size_t f = 0; f < fs.size(); ++f) {
    BiasEstimate& e = out[f];
    e.exhaustive = exhaustive;
    e.trials = trials;
    for (const auto& h : hits) e.hits += h[f];
    e.uniform_mean = std::ldexp(static_cast<double>(fs[f].count_ones()), -static_cast<int>(n));
    const double mean = static_cast<double>(e.hits) / static_cast<double>(trials);
    e.bias = std::abs(mean - e.uniform_mean);
    if (exhaustive) {
      e.lower = e.upper = e.bias;
    } else {
      const auto ci = lab::clopper_pearson(e.hits, trials, opts.confidence);
      e.upper = std::max(std::abs(ci.lower - e.uniform_mean), std::abs(ci.upper - e.uniform_mean));
      e.lower = (e.uniform_mean >= ci.lower && e.uniform_mean <= ci.upper)
                    ? 0.0
                    : std::min(std::abs(ci.lower - e.uniform_mean), std::abs(ci.upper - e.uniform_mean));
    }
  }
  return out;
}

BiasEstimate bias_exhaustive(const Generator& g, const TruthTable& f, const BiasOptions& opts) {
  return bias_many(g, std::span<const TruthTable>(&f, 1), opts).front();
}

nlohmann::json to_json(const BiasEstimate& b) {
  return {{"exhaustive", b.exhaustive}, {"hits", b.hits}, {"trials", b.trials}, {"uniform_mean", b.uniform_mean},
          {"bias", b.bias},             {"lower", b.lower}, {"upper", b.upper}};
}

}  // namespace acprg
