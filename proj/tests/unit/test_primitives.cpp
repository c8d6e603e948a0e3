#include <gtest/gtest.h>

#include <map>

#include "acprg/error.hpp"
#include "acprg/generator.hpp"
#include "acprg/generator_config.hpp"
#include "acprg/gf2.hpp"
#include "acprg/kwise.hpp"
#include "acprg/lab/rng.hpp"
#include "acprg/truth_table.hpp"
#include "support.hpp"

using namespace acprg;
using acprg::testing::dnf;

namespace {

template <typename Fn>
TruthTable table(std::size_t n, Fn fn) {
  TruthTable tt(n);
  for (std::uint64_t x = 0; x < tt.entries(); ++x) tt.set(x, fn(x));
  return tt;
}

BitVec seed_of(std::uint64_t v, std::size_t bits) { return seed_from_integer(v, bits); }

}  // namespace

TEST(Gf2, ModulusTableIsIrreducible) {
  for (unsigned b = 1; b <= Gf2Field::kMaxDegree; ++b) {
    const auto poly = irreducible_poly(b);
    EXPECT_EQ(std::bit_width(poly), b + 1) << b;
    EXPECT_TRUE(is_irreducible(poly)) << b;
  }
}

TEST(Gf2, ReducibleRejected) {
  EXPECT_FALSE(is_irreducible(0x5));   // x^2 + 1
  EXPECT_FALSE(is_irreducible(0x15));  // x^4 + x^2 + 1
  EXPECT_FALSE(is_irreducible(0x6));   // divisible by x
  EXPECT_TRUE(is_irreducible(0x13));
}

TEST(Gf2, AesFieldGoldens) {
  const Gf2Field f(8);
  EXPECT_EQ(f.modulus(), 0x11Bu);
  EXPECT_EQ(f.mul(0x57, 0x83), 0xC1u);
  EXPECT_EQ(f.mul(0x53, 0xCA), 0x01u);
  EXPECT_EQ(f.mul(0x57, 0x13), 0xFEu);
}

TEST(Gf2, MultiplicativeGroupOrder) {
  for (unsigned b = 1; b <= 10; ++b) {
    const Gf2Field f(b);
    for (std::uint32_t a = 1; a < f.order(); ++a) {
      ASSERT_EQ(f.pow(a, f.order() - 1), 1u) << b << " " << a;
      ASSERT_EQ(f.mul(a, 1), a);
    }
  }
}

TEST(Gf2, DegreeOutOfRange) {
  EXPECT_THROW(Gf2Field(0), CapExceeded);
  EXPECT_THROW(Gf2Field(33), CapExceeded);
}

TEST(Kwise, FieldDegree) {
  EXPECT_EQ(field_degree_for(1, 1), 1u);
  EXPECT_EQ(field_degree_for(8, 2), 3u);
  EXPECT_EQ(field_degree_for(9, 2), 4u);
  EXPECT_EQ(field_degree_for(4, 16), 4u);
}

TEST(Kwise, SingleWiseIsUniformPerPoint) {
  // k = 1, b = 3: every x maps uniformly onto [8] over all 8 seeds.
  for (std::uint32_t x = 0; x < 8; ++x) {
    std::vector<int> counts(8);
    for (std::uint64_t s = 0; s < 8; ++s) ++counts[KwiseHash::sample(seed_of(s, 3), 0, 8, 8, 1)(x)];
    for (int c : counts) EXPECT_EQ(c, 1);
  }
}

TEST(Kwise, PairwiseExactOverSmallField) {
  // k = 2, b = 2: Pr[h(a) = y1, h(b) = y2] = 2^-4 for all distinct a, b.
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t c = 0; c < 4; ++c) {
      if (a == c) continue;
      std::map<std::pair<std::uint32_t, std::uint32_t>, int> counts;
      for (std::uint64_t s = 0; s < 16; ++s) {
        const auto h = KwiseHash::sample(seed_of(s, 4), 0, 4, 4, 2);
        ++counts[{h(a), h(c)}];
      }
      EXPECT_EQ(counts.size(), 16u);
      for (const auto& [_, v] : counts) EXPECT_EQ(v, 1);
    }
}

TEST(Kwise, ThreeWiseExactWithTruncation) {
  // b = 4, range 2: every triple of distinct points sees each of 8 patterns 2^12 / 8 times.
  std::vector<std::vector<std::uint32_t>> all;
  for (std::uint64_t s = 0; s < (1u << 12); ++s) all.push_back(KwiseHash::sample(seed_of(s, 12), 0, 16, 2, 3).evaluate_all());
  for (std::uint32_t a = 0; a < 16; ++a)
    for (std::uint32_t b = a + 1; b < 16; ++b)
      for (std::uint32_t c = b + 1; c < 16; ++c) {
        std::array<int, 8> counts{};
        for (const auto& v : all) ++counts[v[a] | v[b] << 1 | v[c] << 2];
        for (int x : counts) ASSERT_EQ(x, 512);
      }
}

TEST(Kwise, PairwiseExactAtDegreeEight) {
  lab::CounterRng rng(3, 0);
  for (int trial = 0; trial < 6; ++trial) {
    const auto a = static_cast<std::uint32_t>(rng.below(256));
    auto c = static_cast<std::uint32_t>(rng.below(255));
    if (c >= a) ++c;
    std::vector<int> counts(16);
    for (std::uint64_t s = 0; s < (1u << 16); ++s) {
      const auto h = KwiseHash::sample(seed_of(s, 16), 0, 256, 4, 2);
      ++counts[h(a) * 4 + h(c)];
    }
    for (int x : counts) ASSERT_EQ(x, 4096);
  }
}

TEST(Kwise, DeterministicAndOffsetAware) {
  lab::CounterRng rng(9, 1);
  const BitVec seed = rng.bits(40);
  const auto h1 = KwiseHash::sample(seed, 7, 20, 4, 3);
  const auto h2 = KwiseHash::sample(seed, 7, 20, 4, 3);
  EXPECT_EQ(h1.evaluate_all(), h2.evaluate_all());
  EXPECT_EQ(h1.coefficients(), KwiseHash::sample(seed.slice(7, 15), 0, 20, 4, 3).coefficients());
  EXPECT_EQ(KwiseHash::seed_bits(20, 4, 3), 15u);
}

TEST(Kwise, SeedLayoutIsBigEndianConstantFirst) {
  // b = 3, k = 2: bits 011 101 give c0 = 3, c1 = 5.
  const auto h = KwiseHash::sample(BitVec::from_string("011101"), 0, 8, 8, 2);
  EXPECT_EQ(h.coefficients(), (std::vector<std::uint32_t>{3, 5}));
  EXPECT_EQ(h(0), 3u);
  EXPECT_EQ(h(1), 3u ^ 5u);
}

TEST(Kwise, Errors) {
  const BitVec seed(64);
  EXPECT_THROW(KwiseHash::sample(seed, 0, 8, 3, 2), MalformedInput);
  EXPECT_THROW(KwiseHash::sample(seed, 0, 8, 4, 0), MalformedInput);
  EXPECT_THROW(KwiseHash::sample(BitVec(5), 0, 8, 4, 2), DimensionMismatch);
}

TEST(KwiseProperty, BucketsPartitionDomain) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    lab::CounterRng rng(11, s);
    const std::size_t n = 1 + rng.below(64);
    const std::size_t range = std::size_t{1} << rng.below(6);
    const std::size_t k = 1 + rng.below(4);
    const auto h = KwiseHash::sample(rng.bits(KwiseHash::seed_bits(n, range, k)), 0, n, range, k);
    std::vector<std::size_t> sizes(range);
    for (auto v : h.evaluate_all()) {
      ASSERT_LT(v, range);
      ++sizes[v];
    }
    std::size_t total = 0;
    for (auto c : sizes) total += c;
    ASSERT_EQ(total, n);
  }
}

TEST(Subset, DyadicExponent) {
  EXPECT_EQ(dyadic_exponent(1.0), 0u);
  EXPECT_EQ(dyadic_exponent(0.25), 2u);
  EXPECT_THROW(dyadic_exponent(0.3), MalformedInput);
  EXPECT_THROW(dyadic_exponent(0.0), MalformedInput);
}

TEST(Subset, ProbabilityOneKeepsEverything) {
  const SubsetSampler s{10, 0, 2};
  lab::CounterRng rng(1, 1);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(s.sample(rng.bits(s.seed_bits())).size(), 10u);
}

TEST(Subset, PairwiseBoundedWithEquality) {
  const SubsetSampler s{8, 1, 2};
  const std::size_t bits = s.seed_bits();
  std::vector<std::vector<int>> pair(8, std::vector<int>(8));
  std::vector<int> single(8);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << bits); ++v) {
    const auto lam = s.sample(seed_of(v, bits));
    for (std::size_t a = 0; a < 8; ++a) {
      single[a] += lam.contains(a);
      for (std::size_t b = 0; b < 8; ++b) pair[a][b] += lam.contains(a) && lam.contains(b);
    }
  }
  const int total = 1 << bits;
  for (std::size_t a = 0; a < 8; ++a) {
    EXPECT_EQ(single[a] * 2, total);
    for (std::size_t b = 0; b < 8; ++b)
      if (a != b) EXPECT_EQ(pair[a][b] * 4, total);
  }
}

TEST(Subset, MarginalExactlyP) {
  const SubsetSampler s{16, 2, 3};
  const std::size_t bits = s.seed_bits();
  std::vector<int> single(16);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << bits); ++v) {
    const auto lam = s.sample(seed_of(v, bits));
    for (std::size_t a = 0; a < 16; ++a) single[a] += lam.contains(a);
  }
  for (int c : single) EXPECT_EQ(c * 4, 1 << bits);
}

TEST(Generator, SeedFromIntegerIsBigEndian) {
  EXPECT_EQ(seed_from_integer(1, 4).to_string(), "0001");
  EXPECT_EQ(seed_from_integer(6, 3).to_string(), "110");
}

TEST(Generator, SeedLengthChecked) {
  const KwiseGenerator g(10, 2);
  EXPECT_THROW(g.expand(BitVec(g.seed_bits() + 1)), DimensionMismatch);
  EXPECT_THROW(g.expand_at(BitVec(g.seed_bits()), 1), DimensionMismatch);
}

TEST(Generator, DeterministicExpansion) {
  lab::CounterRng rng(2, 2);
  const SmallBiasGenerator sb(30, 8);
  const BitVec seed = rng.bits(sb.seed_bits());
  EXPECT_EQ(sb.expand(seed), sb.expand(seed));
  const KwiseGenerator kw(30, 4);
  const BitVec s2 = rng.bits(kw.seed_bits());
  EXPECT_EQ(kw.expand(s2), kw.expand(s2));
}

TEST(Generator, UniformReproducesSeed) {
  const UniformGenerator u(5);
  EXPECT_EQ(u.expand(BitVec::from_string("10110")).to_string(), "10110");
}

TEST(Generator, XorConcatenatesSeeds) {
  auto a = std::make_shared<UniformGenerator>(4);
  auto b = std::make_shared<KwiseGenerator>(4, 2);
  const XorGenerator x({a, b});
  EXPECT_EQ(x.seed_bits(), 4 + b->seed_bits());
  lab::CounterRng rng(4, 4);
  const BitVec seed = rng.bits(x.seed_bits());
  EXPECT_EQ(x.expand(seed), a->expand(seed.slice(0, 4)) ^ b->expand(seed.slice(4, b->seed_bits())));
}

TEST(Generator, ConfigDescriptors) {
  const auto g = generator_from_json(nlohmann::json{{"type", "xor"}, {"n", 12}, {"parts", {{{"type", "kwise"}, {"k", 3}}, {{"type", "smallbias"}, {"b", 6}}}}});
  EXPECT_EQ(g->output_bits(), 12u);
  EXPECT_EQ(g->seed_bits(), KwiseGenerator(12, 3).seed_bits() + 12);
  EXPECT_EQ(generator_from_json(g->descriptor())->descriptor(), g->descriptor());
  EXPECT_THROW(generator_from_json(nlohmann::json{{"type", "nope"}, {"n", 3}}), MalformedInput);
  EXPECT_THROW(generator_from_json(nlohmann::json{{"type", "uniform"}, {"n", 3}}, 4), DimensionMismatch);
}

TEST(Bias, ConstantFunctionZeroForEveryGenerator) {
  const std::vector<GeneratorPtr> gens{std::make_shared<UniformGenerator>(8), std::make_shared<KwiseGenerator>(8, 2),
                                       std::make_shared<SmallBiasGenerator>(8, 5), std::make_shared<ZeroGenerator>(8)};
  for (const auto& g : gens)
    for (bool v : {false, true}) EXPECT_EQ(bias_exhaustive(*g, TruthTable::constant(8, v)).bias, 0.0);
}

TEST(Bias, UniformGeneratorZeroForEveryFunction) {
  const UniformGenerator u(8);
  lab::CounterRng rng(6, 6);
  for (int i = 0; i < 50; ++i) {
    const auto f = table(8, [&](std::uint64_t) { return rng.bit(); });
    EXPECT_EQ(bias_exhaustive(u, f).bias, 0.0);
  }
}

TEST(Bias, KwiseFoolsWidthKTermExactly) {
  for (std::size_t k = 1; k <= 4; ++k) {
    const KwiseGenerator g(12, k);
    std::vector<int> lits;
    for (std::size_t i = 0; i < k; ++i) lits.push_back(i % 2 ? -static_cast<int>(3 * i + 1) : static_cast<int>(3 * i + 1));
    const auto f = TruthTable::of(dnf(12, {lits}));
    EXPECT_EQ(bias_exhaustive(g, f).bias, 0.0) << k;
  }
}

TEST(BiasProperty, KwiseFoolsEveryJuntaOfKVariables) {
  lab::CounterRng rng(8, 8);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 6 + rng.below(7), k = 1 + rng.below(3);
    const KwiseGenerator g(n, k);
    std::vector<std::size_t> vars;
    while (vars.size() < k) {
      const auto v = rng.below(n);
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    const std::uint64_t truth = rng.next();
    const auto f = table(n, [&](std::uint64_t x) {
      std::uint64_t idx = 0;
      for (std::size_t q = 0; q < k; ++q) idx |= ((x >> vars[q]) & 1u) << q;
      return ((truth >> idx) & 1u) != 0;
    });
    ASSERT_EQ(bias_exhaustive(g, f).bias, 0.0);
  }
}

TEST(BiasProperty, SmallBiasParitiesWithinDeclaredBias) {
  const SmallBiasGenerator g(10, 6);
  std::vector<TruthTable> parities;
  for (std::uint64_t mask = 1; mask < 1024; ++mask)
    parities.push_back(table(10, [&](std::uint64_t x) { return (std::popcount(x & mask) & 1) != 0; }));
  const auto est = bias_many(g, parities);
  // Parity bias in the +-1 sense is twice the bias of the 0/1 indicator.
  for (const auto& e : est) {
    ASSERT_TRUE(e.exhaustive);
    ASSERT_LE(2 * e.bias, g.declared_bias() + 1e-12);
  }
}

TEST(Bias, ExhaustiveCapAndMonteCarlo) {
  const KwiseGenerator g(20, 2);
  const auto f = TruthTable::of(dnf(20, {{1, 2}}));
  BiasOptions opts;
  opts.exhaustive_cap_bits = 4;
  EXPECT_THROW(bias_exhaustive(g, f, opts), CapExceeded);
  opts.allow_monte_carlo = true;
  opts.samples = 200000;
  const auto e = bias_exhaustive(g, f, opts);
  EXPECT_FALSE(e.exhaustive);
  EXPECT_EQ(e.trials, 200000u);
  EXPECT_EQ(e.lower, 0.0);  // the true mean 1/4 lies inside the interval
  EXPECT_LT(e.upper, 0.01);
  EXPECT_EQ(bias_exhaustive(g, f, opts).hits, e.hits);
}

TEST(Bias, WorkerCountDoesNotChangeResult) {
  const SmallBiasGenerator g(12, 9);
  const auto f = TruthTable::of(dnf(12, {{1, -5, 9}, {2, 3}}));
  BiasOptions one, many;
  one.workers = 1;
  many.workers = 7;
  EXPECT_EQ(bias_exhaustive(g, f, one).hits, bias_exhaustive(g, f, many).hits);
}
