#include <gtest/gtest.h>

#include <cstdlib>

#include "acprg/error.hpp"
#include "acprg/lab/experiment.hpp"
#include "acprg/lab/instances.hpp"
#include "acprg/lab/rng.hpp"
#include "acprg/lab/stats.hpp"

using namespace acprg;
using namespace acprg::lab;

namespace {

ExperimentConfig cfg_of(const nlohmann::json& j) { return config_from_json(j); }

}  // namespace

TEST(Rng, CounterStreamsAreReproducible) {
  CounterRng a(7, 3), b(7, 3), c(7, 4);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
  }
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFull);
}

TEST(Rng, BelowAndDyadic) {
  CounterRng r(1, 1);
  std::array<int, 5> counts{};
  for (int i = 0; i < 50000; ++i) ++counts[r.below(5)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
  int hits = 0;
  for (int i = 0; i < 64000; ++i) hits += r.dyadic(3);
  EXPECT_NEAR(hits, 8000, 400);
}

TEST(Stats, ClopperPearsonGoldens) {
  struct Row {
    std::uint64_t k, n;
    double lo, hi;
  };
  const Row rows[] = {{0, 100, 0.0, 0.05160402962410399},
                      {5, 100, 0.010940333584790029, 0.1351446825356235},
                      {100, 100, 0.948395970375896, 1.0},
                      {1, 10, 0.0005011285754646338, 0.5442870568996868},
                      {37, 1000, 0.02335899491136424, 0.05522367951241849},
                      {0, 100000, 0.0, 5.29817700819234e-05}};
  for (const auto& r : rows) {
    const auto ci = clopper_pearson(r.k, r.n, 0.99);
    EXPECT_NEAR(ci.lower, r.lo, 1e-12) << r.k << "/" << r.n;
    EXPECT_NEAR(ci.upper, r.hi, 1e-12) << r.k << "/" << r.n;
  }
  EXPECT_THROW(clopper_pearson(3, 2), MalformedInput);
}

TEST(Stats, BoundGoldens) {
  EXPECT_DOUBLE_EQ(switching_bound(2, 1.0 / 64, 4, 8, 0), 0.0095367431640625);
  EXPECT_DOUBLE_EQ(switching_bound(2, 1.0 / 20, 3, 8, 0), 1.0);
  EXPECT_NEAR(switching_bound(2, 1.0 / 32, 3, 8, 1e-6), 0.244140625 + 33.554432, 1e-9);
  EXPECT_DOUBLE_EQ(multi_switching_bound(4, 2, 2, 4, 1.0 / 64, 0), 20.25);
  EXPECT_NEAR(multi_switching_bound(4, 2, 2, 4, 1.0 / 64, 1e-9), 20.25 + 782.757789696, 1e-9);
  // Real-valued exponent t/w = 3/2.
  EXPECT_NEAR(multi_switching_bound(8, 1, 2, 3, 1.0 / 128, 0), 0.5966213466261495, 1e-12);
}

TEST(Config, RoundTrip) {
  const auto j = nlohmann::json{{"kind", "fool"},
                                {"label", "x"},
                                {"n", 9},
                                {"p", 0.125},
                                {"lambda", {{"type", "kwise"}, {"independence", 3}}},
                                {"generator", {{"type", "kwise"}, {"k", 2}}},
                                {"circuits", {{"terms_up_to", 2}}},
                                {"samples", 77},
                                {"seed", 5},
                                {"output", "out/x"}};
  const auto c = config_from_json(j);
  EXPECT_EQ(to_json(config_from_json(to_json(c))), to_json(c));
  EXPECT_EQ(c.n, 9u);
  EXPECT_EQ(c.output, "out/x");
  EXPECT_THROW(config_from_json(nlohmann::json{{"n", 3}}), MalformedInput);
  EXPECT_THROW(run_experiment(cfg_of({{"kind", "nope"}})), MalformedInput);
}

TEST(Report, CsvAndJsonShape) {
  const auto r = run_experiment(cfg_of({{"kind", "switch"}, {"n", 6}, {"m", 3}, {"t", 6}, {"samples", 50}}));
  const auto j = to_json(r);
  for (const char* key : {"experiment", "label", "numerator", "denominator", "ci_lower", "ci_upper", "bound", "verdict", "environment"})
    EXPECT_TRUE(j.contains(key)) << key;
  const auto header = csv_header(), row = to_csv_row(r);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));
}

TEST(Switching, DepthNeverExceedsN) {
  const auto r = run_switching_experiment(cfg_of({{"kind", "switch"}, {"n", 8}, {"m", 6}, {"k", 3}, {"t", 8}, {"p", 0.5}, {"samples", 500}}));
  EXPECT_EQ(r.numerator, 0u);
  EXPECT_TRUE(r.pass);
}

TEST(Switching, VacuousBoundPasses) {
  const auto r = run_switching_experiment(
      cfg_of({{"kind", "switch"}, {"n", 16}, {"m", 8}, {"k", 2}, {"t", 3}, {"p", 0.05}, {"samples", 2000}}));
  EXPECT_DOUBLE_EQ(*r.bound, 1.0);
  EXPECT_FALSE(r.informative());
  EXPECT_TRUE(r.pass);
}

TEST(Switching, ReproducibleAcrossRunsAndWorkers) {
  const auto c = cfg_of({{"kind", "switch"}, {"n", 12}, {"m", 6}, {"k", 2}, {"t", 1}, {"p", 0.25}, {"samples", 3000}, {"seed", 9}});
  ::setenv("ACPRG_WORKERS", "1", 1);
  const auto a = to_json(run_experiment(c));
  ::setenv("ACPRG_WORKERS", "5", 1);
  const auto b = to_json(run_experiment(c));
  ::unsetenv("ACPRG_WORKERS");
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_GT(a["numerator"].get<std::uint64_t>(), 0u);
}

TEST(Switching, PairedKwiseXMatchesOnWidthKTesters) {
  // x from an n-wise source is uniform, so the paired runs share Lambda and agree in law;
  // the epsilon term of the bound is zero for an exact-zero-bias source.
  auto c = cfg_of({{"kind", "switch"}, {"n", 10}, {"m", 5}, {"k", 2}, {"t", 2}, {"p", 0.25}, {"samples", 4000}});
  const auto truly = run_experiment(c);
  c.x = {{"type", "kwise"}, {"k", 10}};
  const auto sub = run_experiment(c);
  EXPECT_EQ(*truly.bound, *sub.bound);
  EXPECT_NEAR(truly.frequency(), sub.frequency(), 0.05);
}

TEST(MultiSwitching, WideLeavesNeverFail) {
  const auto r = run_multi_switching_experiment(
      cfg_of({{"kind", "multi-switch"}, {"n", 6}, {"m", 3}, {"terms", 3}, {"k", 2}, {"w", 6}, {"t", 1}, {"p", 0.5}, {"samples", 300}}));
  EXPECT_EQ(r.numerator, 0u);
  EXPECT_TRUE(r.pass);
}

TEST(Searcher, ExactSmallRuns) {
  EXPECT_TRUE(run_experiment(cfg_of({{"kind", "searcher"}, {"n", 8}, {"m", 4}, {"k", 2}, {"t", 2}, {"samples", 30}})).pass);
  EXPECT_TRUE(run_experiment(cfg_of({{"kind", "searcher"}, {"n", 8}, {"m", 2}, {"terms", 3}, {"k", 2}, {"t", 2}, {"w", 1},
                                     {"global", true}, {"samples", 20}, {"p", 0.6}}))
                  .pass);
}

TEST(Checks, CanonicalCnfAndRefutation) {
  EXPECT_TRUE(run_experiment(cfg_of({{"kind", "canonical"}, {"n", 8}, {"m", 4}, {"k", 3}, {"samples", 50}, {"p", 0.6}})).pass);
  EXPECT_TRUE(run_experiment(cfg_of({{"kind", "cnf-tester"}, {"n", 8}, {"m", 4}, {"k", 2}, {"t", 2}, {"samples", 30}})).pass);
  EXPECT_TRUE(run_experiment(cfg_of({{"kind", "refute"}, {"n", 6}, {"m", 2}, {"terms", 3}, {"k", 2}, {"w", 1}, {"t", 2},
                                     {"samples", 40}, {"p", 0.8}}))
                  .pass);
}

TEST(Fooling, UniformHasZeroBias) {
  const auto r = run_fooling_test(cfg_of({{"kind", "fool"}, {"n", 8}, {"generator", {{"type", "uniform"}}},
                                          {"circuits", {{"random_depth3", 10}, {"adversarial", true}}}}));
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.details["max_bias"].get<double>(), 0.0);
  EXPECT_TRUE(r.pass);
}

TEST(Fooling, KwiseFoolsAllShortTermsExactly) {
  const auto r = run_fooling_test(cfg_of({{"kind", "fool"}, {"n", 10}, {"k", 3}, {"generator", {{"type", "kwise"}, {"k", 3}}},
                                          {"circuits", {{"terms_up_to", 3}}}}));
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.details["max_bias"].get<double>(), 0.0);
  EXPECT_EQ(r.details["circuits"].get<std::size_t>(), 2u * 10 + 4u * 45 + 8u * 120);
  EXPECT_TRUE(r.pass);
}

TEST(Fooling, BiasedGeneratorFails) {
  const auto r = run_fooling_test(cfg_of({{"kind", "fool"}, {"n", 6}, {"eps", 0.01}, {"generator", {{"type", "zero"}}},
                                          {"circuits", {{"terms_up_to", 1}}}}));
  EXPECT_FALSE(r.pass);
}

TEST(Composer, IdentitiesHoldOnSmallConfig) {
  const auto r = run_composer_identities(
      cfg_of({{"kind", "composer"},
              {"n", 8},
              {"samples", 300},
              {"generator",
               {{"type", "composed"}, {"depth", 3}, {"k", 2}, {"eps", 0.0625}, {"overrides", {{"w", 2}, {"t", 2}}}}}}));
  EXPECT_TRUE(r.pass) << r.details.dump();
  EXPECT_TRUE(r.details["hybrid_w_uniform"]["pass"].get<bool>());
}

TEST(Instances, RestrictionStarsMatchLambda) {
  CounterRng rng(3, 3);
  for (int i = 0; i < 100; ++i) {
    const auto lam = random_subset(rng, 20, 0.25);
    const auto rho = restriction_from(lam, rng.bits(20));
    EXPECT_EQ(rho.star_set().indices(), lam.indices());
  }
}
