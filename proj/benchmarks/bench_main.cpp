#include <benchmark/benchmark.h>

#include <vector>

#include "acprg/canonical.hpp"
#include "acprg/composer.hpp"
#include "acprg/decision_tree.hpp"
#include "acprg/generator.hpp"
#include "acprg/generator_config.hpp"
#include "acprg/kwise.hpp"
#include "acprg/lab/instances.hpp"
#include "acprg/lab/rng.hpp"
#include "acprg/partial_dt.hpp"
#include "acprg/truth_table.hpp"

using namespace acprg;

namespace {

BitVec random_bits(lab::CounterRng& rng, std::size_t n) {
  BitVec v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, rng.bit());
  return v;
}

void BM_DtOracle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  lab::CounterRng rng(1, 0);
  std::vector<TruthTable> tables;
  for (int i = 0; i < 64; ++i) tables.push_back(TruthTable::of(lab::random_dnf(rng, n, 6, 3)));
  std::size_t i = 0;
  for (auto _ : state) {
    DtOracle oracle;  // cold memo each iteration
    benchmark::DoNotOptimize(oracle.depth(tables[i++ % tables.size()]));
  }
}
BENCHMARK(BM_DtOracle)->Arg(8)->Arg(10)->Arg(12);

void BM_CanonicalRun(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  lab::CounterRng rng(2, 0);
  const auto f = lab::random_dnf(rng, n, 4 * n, 4);
  const auto rho = lab::random_restriction(rng, n, 0.5);
  const auto alpha = Restriction::full(random_bits(rng, n));
  for (auto _ : state) benchmark::DoNotOptimize(canonical_dt_run(f, rho, alpha));
}
BENCHMARK(BM_CanonicalRun)->Arg(16)->Arg(64)->Arg(256);

void BM_PartialDt(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  lab::CounterRng rng(3, 0);
  const auto family = lab::random_family(rng, 3, n, 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(has_w_partial_depth_t_dt(family, 1, 3));
}
BENCHMARK(BM_PartialDt)->Arg(6)->Arg(8)->Arg(10);

void BM_KwiseEvaluateAll(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const std::size_t n = 1024;
  lab::CounterRng rng(4, 0);
  const auto seed = random_bits(rng, KwiseHash::seed_bits(n, n, k));
  const auto h = KwiseHash::sample(seed, 0, n, n, k);
  for (auto _ : state) benchmark::DoNotOptimize(h.evaluate_all());
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_KwiseEvaluateAll)->Arg(2)->Arg(8)->Arg(32);

void BM_ComposedExpand(benchmark::State& state) {
  GeneratorSpec spec;
  spec.depth = static_cast<unsigned>(state.range(0));
  spec.n = 128;
  spec.m = 128;
  spec.k = 3;
  spec.log2_eps = -6;
  spec.overrides.w = 4;
  spec.overrides.t = 2;
  spec.overrides.hash_independence = 4;
  spec.base = {{"type", "kwise"}, {"k", 4}};
  spec.noise = {{"type", "kwise"}, {"k", 4}};
  const auto g = make_generator(spec);
  lab::CounterRng rng(5, 0);
  const auto seed = random_bits(rng, g->seed_bits());
  for (auto _ : state) benchmark::DoNotOptimize(g->expand(seed));
  state.counters["seed_bits"] = static_cast<double>(g->seed_bits());
}
BENCHMARK(BM_ComposedExpand)->Arg(2)->Arg(3);

void BM_BiasMany(benchmark::State& state) {
  const std::size_t n = 12;
  const auto g = generator_from_json({{"type", "kwise"}, {"k", 3}}, n);
  lab::CounterRng rng(6, 0);
  std::vector<TruthTable> fs;
  for (int i = 0; i < state.range(0); ++i) fs.push_back(TruthTable::of(lab::random_dnf(rng, n, 4, 3)));
  BiasOptions opts;
  opts.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(bias_many(*g, fs, opts));
}
BENCHMARK(BM_BiasMany)->Arg(1)->Arg(16)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
