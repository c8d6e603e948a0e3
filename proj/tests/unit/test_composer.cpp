#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "acprg/composer.hpp"
#include "acprg/error.hpp"
#include "acprg/generator_config.hpp"
#include "acprg/lab/rng.hpp"

using namespace acprg;

namespace {

GeneratorSpec small_spec(std::size_t n, std::size_t w, std::size_t t) {
  GeneratorSpec s;
  s.depth = 3;
  s.n = n;
  s.m = n;
  s.k = 2;
  s.log2_eps = -4;
  s.overrides.w = w;
  s.overrides.t = t;
  s.base = {{"type", "kwise"}, {"k", 3}};
  s.noise = {{"type", "kwise"}, {"k", 3}};
  return s;
}

// out_j = Y_j xor (X_{H(j)})_j recomputed from the layout.
BitVec recompute(const ComposedGenerator& g, const BitVec& seed) {
  const auto h = g.hash_at(seed);
  const BitVec y = g.noise().expand_at(seed, g.noise_offset());
  std::vector<BitVec> xs;
  for (std::size_t i = 0; i < g.buckets(); ++i) xs.push_back(g.child().expand_at(seed, g.child_offset(i)));
  BitVec out(g.output_bits());
  for (std::size_t j = 0; j < out.size(); ++j) out.set(j, y.test(j) != xs[h(static_cast<std::uint32_t>(j))].test(j));
  return out;
}

}  // namespace

TEST(Schedule, DepthTwoDelegates) {
  GeneratorSpec s;
  s.depth = 2;
  s.n = 16;
  s.m = 32;
  s.log2_eps = -5;
  s.base = {{"type", "kwise"}, {"k", 4}};
  EXPECT_TRUE(derive_schedule(s).delegate_to_base);
  const auto g = make_generator(s);
  EXPECT_EQ(seed_length(s).total, g->seed_bits());
  EXPECT_EQ(g->seed_bits(), KwiseGenerator(16, 4).seed_bits());
}

TEST(Schedule, UnitWidthAndInverseMError) {
  GeneratorSpec s;
  s.depth = 3;
  s.m = 1024;
  s.n = 1024;
  s.k = 1;
  s.log2_eps = -10;
  const auto sch = derive_schedule(s);
  EXPECT_EQ(sch.w_raw, 40u);
  EXPECT_EQ(sch.w, 64u);
  EXPECT_EQ(sch.t, 160u * 10u);
  EXPECT_EQ(sch.hash_independence, 2u * sch.t);
  EXPECT_EQ(sch.hash_independence_used, 1024u);
  EXPECT_DOUBLE_EQ(sch.log2_eps_child, -10.0 - 6.0 - 1601.0);
  EXPECT_NEAR(sch.log2_eps_noise, -10.0 - 3200.0 * std::log2(24.0 * 1024.0), 1e-6);
  EXPECT_EQ(sch.child.depth, 2u);
  EXPECT_EQ(sch.child.m, 2u * 1024u * 1024u);
  EXPECT_EQ(sch.child.k, 10u);
  EXPECT_DOUBLE_EQ(sch.child.log2_eps, sch.log2_eps_child);
}

TEST(Schedule, OverridesApply) {
  const auto sch = derive_schedule(small_spec(12, 3, 2));
  EXPECT_EQ(sch.w, 4u);
  EXPECT_EQ(sch.t, 2u);
  EXPECT_EQ(sch.hash_independence, 4u);
}

TEST(Schedule, ValidationAndOverflow) {
  GeneratorSpec s = small_spec(12, 2, 2);
  s.m = 4;
  EXPECT_THROW(derive_schedule(s), MalformedInput);
  s = small_spec(12, 2, 2);
  s.log2_eps = 0.5;
  EXPECT_THROW(derive_schedule(s), MalformedInput);
  s = small_spec(12, 2, 2);
  s.depth = 1;
  EXPECT_THROW(derive_schedule(s), MalformedInput);
  s = small_spec(12, 2, 2);
  s.m = std::uint64_t{1} << 40;
  s.depth = 4;
  EXPECT_THROW(make_generator(s), CapExceeded);
}

TEST(ScheduleProperty, ShrinkingErrorNeverShrinksTOrSeed) {
  for (unsigned d : {3u, 4u})
    for (std::uint64_t m : {16u, 64u, 256u})
      for (std::size_t k : {1u, 2u, 3u}) {
        std::size_t last_t = 0, last_seed = 0;
        for (double le = -1; le >= -40; le -= 3) {
          GeneratorSpec s;
          s.depth = d;
          s.m = m;
          s.n = static_cast<std::size_t>(m);
          s.k = k;
          s.log2_eps = le;
          const auto sch = derive_schedule(s);
          const auto acc = seed_length(s);
          ASSERT_GE(sch.t, last_t);
          ASSERT_GE(acc.total, last_seed);
          last_t = sch.t;
          last_seed = acc.total;
        }
      }
}

TEST(Accounting, IdentityHolds) {
  for (unsigned d : {3u, 4u})
    for (std::uint64_t m : {8u, 64u, 512u}) {
      GeneratorSpec s;
      s.depth = d;
      s.m = m;
      s.n = static_cast<std::size_t>(m);
      s.k = 2;
      s.log2_eps = -8;
      const auto acc = seed_length(s);
      EXPECT_EQ(acc.children, acc.w * acc.child_each);
      EXPECT_EQ(acc.total, acc.hash + acc.noise + acc.children);
      const auto g = make_generator(s);
      EXPECT_EQ(g->seed_bits(), acc.total);
    }
}

TEST(Accounting, DoublingKRoughlyDoublesChildren) {
  for (std::size_t k : {1u, 2u}) {
    GeneratorSpec a;
    a.depth = 3;
    a.m = 256;
    a.n = 256;
    a.k = k;
    a.log2_eps = -8;
    GeneratorSpec b = a;
    b.k = 2 * k;
    const double ratio = double(seed_length(b).children) / double(seed_length(a).children);
    EXPECT_GT(ratio, 1.8);
    EXPECT_LT(ratio, 2.3);
  }
}

TEST(Accounting, ClosedFormEvaluation) {
  GeneratorSpec s;
  s.depth = 4;
  s.m = 256;
  s.n = 256;
  s.k = 2;
  s.log2_eps = -8;
  // (64 + 2 * 8^2) * (8 + 8) * log2(8) * 64
  EXPECT_DOUBLE_EQ(closed_form_seed_bound(s, 1.0), (64.0 + 2.0 * 64.0) * 16.0 * 3.0);
  EXPECT_DOUBLE_EQ(seed_length(s).closed_form, closed_form_seed_bound(s, kClosedFormConstant));
  s.m = 2;
  s.n = 2;
  EXPECT_DOUBLE_EQ(closed_form_seed_bound(s, 1.0), (1.0 + 2.0) * 9.0 * 1.0);
}

TEST(Composed, SingleBucketIsNoiseXorChild) {
  auto s = small_spec(12, 1, 2);
  const ComposedGenerator g(s);
  lab::CounterRng rng(1, 0);
  for (int i = 0; i < 200; ++i) {
    const BitVec seed = rng.bits(g.seed_bits());
    EXPECT_EQ(g.expand(seed), g.noise().expand_at(seed, g.noise_offset()) ^ g.child().expand_at(seed, g.child_offset(0)));
  }
}

TEST(Composed, ZeroNoiseUniformChildrenGiveUniformOutput) {
  auto s = small_spec(6, 2, 1);
  s.overrides.hash_independence = 2;
  s.noise = {{"type", "zero"}};
  s.base = {{"type", "uniform"}};
  const ComposedGenerator g(s);
  ASSERT_LE(g.seed_bits(), 20u);
  std::vector<std::uint64_t> counts(64);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << g.seed_bits()); ++v) {
    const BitVec out = g.expand(seed_from_integer(v, g.seed_bits()));
    std::uint64_t code = 0;
    for (std::size_t j = 0; j < 6; ++j) code |= std::uint64_t{out.test(j)} << j;
    ++counts[code];
  }
  for (auto c : counts) EXPECT_EQ(c, counts[0]);
}

TEST(ComposedProperty, CoordinateIdentity) {
  const ComposedGenerator g(small_spec(64, 8, 3));
  lab::CounterRng rng(2, 0);
  for (int i = 0; i < 10000; ++i) {
    const BitVec seed = rng.bits(g.seed_bits());
    ASSERT_EQ(g.expand(seed), recompute(g, seed));
  }
}

TEST(ComposedProperty, CoordinateIdentityUnderDefaultSchedule) {
  GeneratorSpec s;
  s.depth = 3;
  s.n = 32;
  s.m = 32;
  s.k = 1;
  s.log2_eps = -3;
  const ComposedGenerator g(s);
  lab::CounterRng rng(3, 0);
  for (int i = 0; i < 100; ++i) {
    const BitVec seed = rng.bits(g.seed_bits());
    ASSERT_EQ(g.expand(seed), recompute(g, seed));
  }
}

TEST(ComposedProperty, BucketsPartitionForEveryHashSeed) {
  const ComposedGenerator g(small_spec(10, 4, 2));
  const std::size_t hb = g.accounting().hash;
  ASSERT_LE(hb, 20u);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << hb); ++v) {
    BitVec seed(g.seed_bits());
    const BitVec hs = seed_from_integer(v, hb);
    for (std::size_t q = 0; q < hb; ++q) seed.set(q, hs.test(q));
    const auto h = g.hash_at(seed);
    std::size_t total = 0;
    for (std::size_t b = 0; b < g.buckets(); ++b)
      for (std::uint32_t j = 0; j < 10; ++j) total += h(j) == b;
    ASSERT_EQ(total, 10u);
  }
}

TEST(ComposedProperty, DeterministicAndSlicesDisjoint) {
  const ComposedGenerator g(small_spec(20, 4, 2));
  const auto& a = g.accounting();
  EXPECT_EQ(g.noise_offset(), a.hash);
  EXPECT_EQ(g.child_offset(0), a.hash + a.noise);
  EXPECT_EQ(g.child_offset(g.buckets() - 1) + a.child_each, a.total);
  lab::CounterRng rng(4, 0);
  for (int i = 0; i < 100; ++i) {
    const BitVec seed = rng.bits(g.seed_bits());
    ASSERT_EQ(g.expand(seed), g.expand(seed));
    // Flipping a bit inside child slot c changes only coordinates hashed to c.
    const std::size_t c = rng.below(g.buckets());
    BitVec flipped = seed;
    flipped.flip(g.child_offset(c) + rng.below(a.child_each));
    const BitVec diff = g.expand(seed) ^ g.expand(flipped);
    const auto h = g.hash_at(seed);
    for (auto j : diff.ones()) ASSERT_EQ(h(static_cast<std::uint32_t>(j)), c);
  }
}

TEST(Hybrid, ZeroIsGenerate) {
  const auto g = std::make_shared<const ComposedGenerator>(small_spec(16, 4, 2));
  lab::CounterRng rng(5, 0);
  for (int i = 0; i < 200; ++i) {
    const BitVec seed = rng.bits(g->seed_bits());
    ASSERT_EQ(g->hybrid_generate(0, seed, BitVec(0)), g->expand(seed));
  }
  EXPECT_EQ(HybridGenerator(g, 0).expand(rng.bits(g->seed_bits())).size(), 16u);
}

TEST(Hybrid, FullHybridIsUniform) {
  const ComposedGenerator g(small_spec(8, 2, 2));
  ASSERT_EQ(g.buckets(), 2u);
  lab::CounterRng rng(6, 0);
  for (int s = 0; s < 3; ++s) {
    const BitVec seed = rng.bits(g.seed_bits());
    std::vector<int> counts(256);
    for (std::uint64_t v = 0; v < (1u << 16); ++v) {
      const BitVec out = g.hybrid_generate(2, seed, seed_from_integer(v, 16));
      std::uint64_t code = 0;
      for (std::size_t j = 0; j < 8; ++j) code |= std::uint64_t{out.test(j)} << j;
      ++counts[code];
    }
    for (int c : counts) ASSERT_EQ(c, 256);
  }
}

TEST(Hybrid, TapeLengthChecked) {
  const ComposedGenerator g(small_spec(8, 2, 2));
  EXPECT_THROW(g.hybrid_generate(1, BitVec(g.seed_bits()), BitVec(3)), DimensionMismatch);
  EXPECT_THROW(g.hybrid_generate(3, BitVec(g.seed_bits()), BitVec(24)), MalformedInput);
}

TEST(Spec, JsonRoundTrip) {
  auto s = small_spec(12, 4, 2);
  const auto j = to_json(s);
  const auto back = spec_from_json(j);
  EXPECT_EQ(to_json(back), j);
  EXPECT_EQ(make_generator(back)->seed_bits(), make_generator(s)->seed_bits());
  const auto g = generator_from_json(nlohmann::json{{"type", "composed"}, {"depth", 3}, {"n", 12}, {"k", 2}, {"eps", 0.0625},
                                                    {"overrides", {{"w", 4}, {"t", 2}}}});
  EXPECT_EQ(g->output_bits(), 12u);
}
