// Runs the nine acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "acprg/generator.hpp"
#include "acprg/kwise.hpp"
#include "acprg/lab/experiment.hpp"
#include "acprg/lab/rng.hpp"

using namespace acprg;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
};

lab::ExperimentReport run(const json& j) { return lab::run_experiment(lab::config_from_json(j)); }

std::uint64_t detail(const lab::ExperimentReport& r, const char* key) { return r.details.at(key).get<std::uint64_t>(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. Searcher success counts equal 2^(n-s) and 2^(n-S) exactly.
Outcome searcher_exactness() {
  std::uint64_t single_ok = 0, single = 0;
  for (std::size_t n = 8; n <= 12; ++n) {
    const auto r = run({{"kind", "searcher"}, {"n", n}, {"m", 5}, {"k", 3}, {"t", 3}, {"p", 0.5}, {"samples", 45}, {"seed", 100 + n}});
    single_ok += r.numerator;
    single += r.denominator;
  }
  const auto g = run({{"kind", "searcher"}, {"global", true}, {"n", 10}, {"m", 3}, {"terms", 3}, {"k", 2}, {"w", 1},
                      {"t", 3}, {"max_stages", 3}, {"p", 0.6}, {"samples", 70}, {"seed", 111}});
  const bool pass = single_ok == single && single >= 200 && g.pass && g.denominator >= 50;
  return {pass, fmt("single %llu/%llu exact (n 8..12), global %llu/%llu exact (R<=3, n=10)", (unsigned long long)single_ok,
                    (unsigned long long)single, (unsigned long long)g.numerator, (unsigned long long)g.denominator)};
}

// 2. Witness CNF agrees with replay on all inputs and respects the size bounds.
Outcome cnf_tester_exactness() {
  std::uint64_t ok = 0, total = 0, disagree = 0, big = 0;
  for (std::size_t n : {8u, 10u, 12u}) {
    const auto r = run({{"kind", "cnf-tester"}, {"n", n}, {"m", 5}, {"k", 3}, {"t", 3}, {"p", 0.5}, {"samples", 180}, {"seed", 200 + n}});
    ok += r.numerator;
    total += r.denominator;
    disagree += detail(r, "disagreements");
    big += detail(r, "size_violations");
  }
  const auto g = run({{"kind", "cnf-tester"}, {"global", true}, {"n", 10}, {"m", 3}, {"terms", 3}, {"k", 2}, {"w", 1},
                      {"t", 3}, {"max_stages", 3}, {"p", 0.6}, {"samples", 120}, {"seed", 222}});
  const bool pass = ok == total && total >= 500 && g.pass && g.denominator > 0;
  return {pass, fmt("single %llu/%llu (disagreements %llu, size violations %llu), global %llu/%llu", (unsigned long long)ok,
                    (unsigned long long)total, (unsigned long long)disagree, (unsigned long long)big,
                    (unsigned long long)g.numerator, (unsigned long long)g.denominator)};
}

// 3. Canonical transcripts are sound and cdt >= dt.
Outcome canonical_soundness() {
  const auto r = run({{"kind", "canonical"}, {"n", 10}, {"m", 6}, {"k", 3}, {"p", 0.6}, {"samples", 1000}, {"seed", 300}});
  return {r.pass && r.denominator >= 1000,
          fmt("%llu/%llu instances sound and dominant (unsound %llu, dominance violations %llu)",
              (unsigned long long)r.numerator, (unsigned long long)r.denominator, (unsigned long long)detail(r, "unsound"),
              (unsigned long long)detail(r, "dominance_violations"))};
}

// 4. Pr[DT > t] upper confidence limit below (10kp)^t on every informative cell.
Outcome switching_dominance() {
  bool pass = true;
  std::string cells;
  int informative = 0;
  for (double p : {1.0 / 32, 1.0 / 64})
    for (std::size_t t : {3u, 4u}) {
      const auto r = run({{"kind", "switch"}, {"n", 16}, {"m", 8}, {"k", 2}, {"t", t}, {"p", p}, {"samples", 100000}, {"seed", 400 + t}});
      if (r.informative()) {
        ++informative;
        pass = pass && r.pass;
      }
      cells += fmt(" [p=1/%d t=%zu: %llu/100000 ucl=%.3g bound=%.3g]", int(std::lround(1 / p)), t,
                   (unsigned long long)r.numerator, r.ci_upper, *r.bound);
    }
  return {pass && informative > 0, fmt("%d informative cells;", informative) + cells};
}

// 5. Multi-switching failure probability against 4 m^(t/w) (24pk)^t.
Outcome multi_switching_dominance() {
  const auto r = run({{"kind", "multi-switch"}, {"n", 12}, {"m", 4}, {"terms", 4}, {"k", 2}, {"w", 2}, {"t", 4},
                      {"p", 1.0 / 64}, {"samples", 10000}, {"seed", 500}});
  return {r.pass, fmt("%llu/10000 fail, ucl=%.3g, bound=%.4g%s", (unsigned long long)r.numerator, r.ci_upper, *r.bound,
                      r.informative() ? "" : " (bound >= 1: vacuous at these parameters)")};
}

// 6. Refutations exist exactly when no partial tree exists, and replay.
Outcome refutation_round_trip() {
  const auto r = run({{"kind", "refute"}, {"n", 6}, {"m", 2}, {"terms", 3}, {"k", 2}, {"w", 1}, {"t", 2}, {"p", 0.8},
                      {"samples", 400}, {"seed", 600}});
  const auto infeasible = detail(r, "infeasible"), feasible = detail(r, "feasible");
  return {r.pass && infeasible >= 100 && feasible > 0,
          fmt("%llu/%llu consistent; %llu refuted families replay powerfully, %llu certified families return none",
              (unsigned long long)r.numerator, (unsigned long long)r.denominator, (unsigned long long)infeasible,
              (unsigned long long)feasible)};
}

// 7. Composer identities.
Outcome composer_identities() {
  const auto r = run({{"kind", "composer"},
                      {"n", 10},
                      {"samples", 10000},
                      {"seed", 700},
                      {"generator",
                       {{"type", "composed"}, {"depth", 3}, {"k", 2}, {"eps", 0.0625}, {"overrides", {{"w", 2}, {"t", 2}}}}}});
  std::string parts;
  for (const char* key : {"accounting", "partition", "coordinate_identity", "hybrid_zero", "hybrid_w_uniform"}) {
    const bool ok = r.details.contains(key) && r.details.at(key).value("pass", false);
    parts += fmt(" %s=%s", key, ok ? "ok" : "FAILED");
  }
  return {r.pass && r.details.at("hybrid_w_uniform").value("pass", false),
          fmt("%llu/%llu identities;", (unsigned long long)r.numerator, (unsigned long long)r.denominator) + parts};
}

// 8. Composed generator against 100 depth-3 circuits.
Outcome desk_fooling() {
  std::ifstream in(ACPRG_CONFIG_DIR "/acceptance_fooling.json");
  if (!in) return {false, "missing configs/acceptance_fooling.json"};
  const json cfg = json::parse(in);
  const auto r = run(cfg);
  const auto& d = r.details;
  return {r.pass && d.at("circuits").get<std::size_t>() >= 100,
          fmt("max bias %.5f, simultaneous 99%% upper %.5f <= eps %.3g over %zu circuits (%zu-bit seed, %s, %llu seeds)",
              d.at("max_bias").get<double>(), d.at("max_bias_upper").get<double>(), cfg.at("eps").get<double>(),
              d.at("circuits").get<std::size_t>(), d.at("seed_bits").get<std::size_t>(),
              d.at("exhaustive").get<bool>() ? "exhaustive" : "Monte Carlo", (unsigned long long)r.denominator)};
}

// 9. Hash independence and subset sampler marginals by full seed enumeration.
Outcome primitive_exactness() {
  std::size_t checks = 0, failures = 0;
  // Every tuple of <= k distinct points sees each output pattern equally often.
  auto check_hash = [&](unsigned b, std::size_t k, std::size_t range, std::size_t tuples_cap) {
    const std::size_t n = std::size_t{1} << b, bits = KwiseHash::seed_bits(n, range, k, b);
    std::vector<std::vector<std::uint32_t>> table;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << bits); ++s)
      table.push_back(KwiseHash::sample(seed_from_integer(s, bits), 0, n, range, k, b).evaluate_all());
    const unsigned rb = std::countr_zero(range);
    lab::CounterRng rng(b * 100 + k, range);
    std::vector<std::vector<std::uint32_t>> tuples;
    std::vector<std::uint32_t> cur;
    auto all = [&](auto&& self, std::uint32_t from) -> void {
      if (cur.size() == k) {
        tuples.push_back(cur);
        return;
      }
      for (std::uint32_t x = from; x < n; ++x) {
        cur.push_back(x);
        self(self, x + 1);
        cur.pop_back();
      }
    };
    all(all, 0);
    if (tuples.size() > tuples_cap) {
      for (std::size_t i = 0; i < tuples_cap; ++i) std::swap(tuples[i], tuples[i + rng.below(tuples.size() - i)]);
      tuples.resize(tuples_cap);
    }
    const std::uint64_t patterns = std::uint64_t{1} << (rb * k);
    std::vector<std::uint64_t> counts(patterns);
    for (const auto& tup : tuples) {
      std::fill(counts.begin(), counts.end(), 0);
      for (const auto& row : table) {
        std::uint64_t key = 0;
        for (auto x : tup) key = (key << rb) | row[x];
        ++counts[key];
      }
      bool ok = true;
      for (auto c : counts) ok = ok && c * patterns == table.size();
      ++checks;
      failures += !ok;
    }
  };
  for (unsigned b = 2; b <= 5; ++b)
    for (std::size_t k = 1; k <= 3; ++k)
      for (std::size_t range : {std::size_t{2}, std::size_t{1} << b}) check_hash(b, k, range, 1u << 30);
  check_hash(6, 2, 4, 1u << 30);
  check_hash(7, 2, 2, 400);
  check_hash(8, 1, 256, 1u << 30);
  check_hash(8, 2, 4, 200);

  // Subset sampler: Pr[B in Lambda] = p^|B| for all |B| <= k.
  for (unsigned j = 1; j <= 3; ++j)
    for (std::size_t k = 1; k <= 3; ++k) {
      const SubsetSampler s{12, j, k, 0};
      const std::size_t bits = s.seed_bits();
      std::vector<IndexSet> sets;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << bits); ++v) sets.push_back(s.sample(seed_from_integer(v, bits)));
      std::vector<std::size_t> cur;
      auto visit = [&](auto&& self, std::size_t from) -> void {
        if (!cur.empty()) {
          std::uint64_t hits = 0;
          for (const auto& lam : sets) {
            bool in = true;
            for (auto x : cur) in = in && lam.contains(x);
            hits += in;
          }
          ++checks;
          failures += hits << (j * cur.size()) != sets.size();
        }
        if (cur.size() == k) return;
        for (std::size_t x = from; x < 12; ++x) {
          cur.push_back(x);
          self(self, x + 1);
          cur.pop_back();
        }
      };
      visit(visit, 0);
    }
  return {failures == 0, fmt("%zu exact equalities checked, %zu failures (hash b<=8, sampler p in {1/2,1/4,1/8}, |B|<=k<=3)",
                             checks, failures)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double target_seconds;
    std::function<Outcome()> fn;
  };
  const std::vector<Criterion> criteria{
      {1, "searcher exactness", 120, searcher_exactness},
      {2, "CNF-tester exactness", 300, cnf_tester_exactness},
      {3, "canonical-DT soundness and dominance", 120, canonical_soundness},
      {4, "switching-lemma dominance", 600, switching_dominance},
      {5, "multi-switching dominance", 900, multi_switching_dominance},
      {6, "refutation round-trip", 600, refutation_round_trip},
      {7, "composer identities", 120, composer_identities},
      {8, "desk-scale fooling", 1800, desk_fooling},
      {9, "primitive exactness", 120, primitive_exactness},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.target_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s %d %s: %s; %.1f s (target < %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.summary.c_str(), secs,
                c.target_seconds, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  std::printf("%d/%zu acceptance criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
