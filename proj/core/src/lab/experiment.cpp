#include "acprg/lab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <memory>
#include <mutex>
#include <sstream>

#include "acprg/canonical.hpp"
#include "acprg/composer.hpp"
#include "acprg/decision_tree.hpp"
#include "acprg/error.hpp"
#include "acprg/generator_config.hpp"
#include "acprg/global_witness.hpp"
#include "acprg/kwise.hpp"
#include "acprg/lab/instances.hpp"
#include "acprg/lab/rng.hpp"
#include "acprg/lab/stats.hpp"
#include "acprg/parallel.hpp"
#include "acprg/partial_dt.hpp"
#include "acprg/refutation.hpp"
#include "acprg/truth_table.hpp"
#include "acprg/witness.hpp"

#ifndef ACPRG_VERSION
#define ACPRG_VERSION "unknown"
#endif

namespace acprg::lab {

using nlohmann::json;

nlohmann::json to_json(const ExperimentConfig& c) {
  json j{{"kind", c.kind},
         {"label", c.label},
         {"n", c.n},
         {"m", c.m},
         {"terms", c.terms},
         {"k", c.k},
         {"p", c.p},
         {"t", c.t},
         {"w", c.w},
         {"eps", c.eps},
         {"global", c.global},
         {"max_stages", c.max_stages},
         {"lambda", c.lambda},
         {"x", c.x},
         {"generator", c.generator},
         {"circuits", c.circuits},
         {"samples", c.samples},
         {"seed", c.seed},
         {"confidence", c.confidence},
         {"exhaustive_seed_bits", c.exhaustive_seed_bits}};
  if (!c.output.empty()) j["output"] = c.output;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    c.kind = j.at("kind").get<std::string>();
    c.label = j.value("label", c.kind);
    c.n = j.value("n", c.n);
    c.m = j.value("m", c.m);
    c.terms = j.value("terms", c.terms);
    c.k = j.value("k", c.k);
    c.p = j.value("p", c.p);
    c.t = j.value("t", c.t);
    c.w = j.value("w", c.w);
    c.eps = j.value("eps", c.eps);
    c.global = j.value("global", c.global);
    c.max_stages = j.value("max_stages", c.max_stages);
    if (j.contains("lambda")) c.lambda = j.at("lambda");
    if (j.contains("x")) c.x = j.at("x");
    if (j.contains("generator")) c.generator = j.at("generator");
    if (j.contains("circuits")) c.circuits = j.at("circuits");
    c.samples = j.value("samples", c.samples);
    c.seed = j.value("seed", c.seed);
    c.confidence = j.value("confidence", c.confidence);
    c.exhaustive_seed_bits = j.value("exhaustive_seed_bits", c.exhaustive_seed_bits);
    c.output = j.value("output", std::string{});
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("experiment config: ") + e.what());
  }
  if (c.n == 0) throw MalformedInput("experiment config: n must be positive");
  return c;
}

nlohmann::json environment_stamp() {
  json j{{"library", "acprg"}, {"version", ACPRG_VERSION}, {"cxx", static_cast<long>(__cplusplus)}};
#if defined(__clang__)
  j["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  j["compiler"] = std::string("gcc ") + __VERSION__;
#endif
#ifdef NDEBUG
  j["assertions"] = false;
#else
  j["assertions"] = true;
#endif
  return j;
}

nlohmann::json to_json(const ExperimentReport& r) {
  json j{{"experiment", r.kind},
         {"label", r.label},
         {"numerator", r.numerator},
         {"denominator", r.denominator},
         {"frequency", r.frequency()},
         {"ci_lower", r.ci_lower},
         {"ci_upper", r.ci_upper},
         {"exact", r.exact},
         {"verdict", r.pass ? "pass" : "fail"},
         {"details", r.details},
         {"config", r.config},
         {"environment", environment_stamp()}};
  j["bound"] = r.bound ? json(*r.bound) : json(nullptr);
  j["informative"] = r.informative();
  return j;
}

std::string csv_header() {
  return "experiment,label,numerator,denominator,frequency,ci_lower,ci_upper,bound,informative,verdict";
}

std::string to_csv_row(const ExperimentReport& r) {
  std::ostringstream os;
  os << std::setprecision(10) << r.kind << ',' << r.label << ',' << r.numerator << ',' << r.denominator << ','
     << r.frequency() << ',' << r.ci_lower << ',' << r.ci_upper << ',';
  if (r.bound) os << *r.bound;
  os << ',' << (r.informative() ? "true" : "false") << ',' << (r.pass ? "pass" : "fail");
  return os.str();
}

namespace {

constexpr std::uint64_t kLambdaStream = 0, kXStream = 1, kFormulaStream = 2;

CounterRng stream(const ExperimentConfig& cfg, std::uint64_t sample, std::uint64_t sub) {
  return CounterRng(cfg.seed, sample * 4 + sub);
}

ExperimentReport start(const ExperimentConfig& cfg) {
  ExperimentReport r;
  r.kind = cfg.kind;
  r.label = cfg.label.empty() ? cfg.kind : cfg.label;
  r.config = to_json(cfg);
  return r;
}

void finish_bound(ExperimentReport& r, const ExperimentConfig& cfg, double bound) {
  const auto ci = clopper_pearson(r.numerator, r.denominator, cfg.confidence);
  r.ci_lower = ci.lower;
  r.ci_upper = ci.upper;
  r.bound = bound;
  r.pass = ci.upper <= bound;
}

void finish_exact(ExperimentReport& r) {
  r.exact = true;
  if (r.denominator > 0) {
    const auto ci = clopper_pearson(r.numerator, r.denominator, 0.99);
    r.ci_lower = ci.lower;
    r.ci_upper = ci.upper;
  }
  r.pass = r.denominator > 0 && r.numerator == r.denominator;
}

/// Samples Lambda[x, *] for sample i under the configured Lambda and x sources.
class RestrictionSource {
public:
  explicit RestrictionSource(const ExperimentConfig& cfg) : cfg_(cfg) {
    const std::string lt = cfg.lambda.value("type", std::string("random"));
    if (lt == "kwise") {
      sampler_ = SubsetSampler{cfg.n, dyadic_exponent(cfg.p), cfg.lambda.value("independence", cfg.k), 0};
    } else if (lt != "random") {
      throw MalformedInput("lambda type must be random or kwise");
    }
    const std::string xt = cfg.x.value("type", std::string("random"));
    if (xt != "random") x_gen_ = generator_from_json(cfg.x, cfg.n);
  }

  Restriction sample(std::uint64_t i) const {
    auto rl = stream(cfg_, i, kLambdaStream);
    const IndexSet lambda = sampler_ ? sampler_->sample(rl.bits(sampler_->seed_bits())) : random_subset(rl, cfg_.n, cfg_.p);
    auto rx = stream(cfg_, i, kXStream);
    const BitVec x = x_gen_ ? x_gen_->expand(rx.bits(x_gen_->seed_bits())) : rx.bits(cfg_.n);
    return restriction_from(lambda, x);
  }

  json describe() const {
    return {{"lambda", sampler_ ? "kwise" : "random"}, {"x", x_gen_ ? x_gen_->descriptor() : json("random")}};
  }

private:
  const ExperimentConfig& cfg_;
  std::optional<SubsetSampler> sampler_;
  GeneratorPtr x_gen_;
};

/// Runs body(i) for i in [0, samples) across workers and sums the integer counters.
template <std::size_t N, class Body>
std::array<std::uint64_t, N> count_parallel(std::uint64_t samples, Body&& body) {
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::uint64_t>(worker_count(), samples));
  std::vector<std::array<std::uint64_t, N>> partial(chunks, std::array<std::uint64_t, N>{});
  parallel_chunks(
      samples,
      [&](std::size_t c, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) body(i, partial[c]);
      },
      chunks);
  std::array<std::uint64_t, N> total{};
  for (const auto& p : partial)
    for (std::size_t q = 0; q < N; ++q) total[q] += p[q];
  return total;
}

BitVec int_assignment(std::uint64_t v, std::size_t n) {
  const std::uint64_t word = v;
  return BitVec::from_words(n, std::span<const std::uint64_t>(&word, 1));
}

}  // namespace

ExperimentReport run_switching_experiment(const ExperimentConfig& cfg) {
  if (cfg.samples == 0) throw MalformedInput("switching experiment needs samples");
  auto r = start(cfg);
  const RestrictionSource src(cfg);
  const auto counts = count_parallel<2>(cfg.samples, [&](std::uint64_t i, std::array<std::uint64_t, 2>& acc) {
    auto rf = stream(cfg, i, kFormulaStream);
    const DnfFormula f = random_dnf(rf, cfg.n, cfg.m, cfg.k);
    const Restriction rho = src.sample(i);
    const int d = dt_depth_exact(f, rho);
    if (d > static_cast<int>(cfg.t)) ++acc[0];
    acc[1] += static_cast<std::uint64_t>(d);
  });
  r.numerator = counts[0];
  r.denominator = cfg.samples;
  finish_bound(r, cfg, switching_bound(double(cfg.k), cfg.p, double(cfg.t), double(cfg.m), cfg.eps));
  r.details = {{"bound_formula", "(10kp)^t + (4m)^(t+k)*eps"},
               {"mean_depth", double(counts[1]) / double(cfg.samples)},
               {"restriction", src.describe()}};
  return r;
}

ExperimentReport run_multi_switching_experiment(const ExperimentConfig& cfg) {
  if (cfg.samples == 0) throw MalformedInput("multi-switching experiment needs samples");
  if (cfg.n > 31) throw CapExceeded("multi-switching experiment supports n <= 31");
  auto r = start(cfg);
  const RestrictionSource src(cfg);
  const auto counts = count_parallel<1>(cfg.samples, [&](std::uint64_t i, std::array<std::uint64_t, 1>& acc) {
    auto rf = stream(cfg, i, kFormulaStream);
    const auto fam = random_family(rf, cfg.m, cfg.n, cfg.terms, cfg.k);
    const Restriction rho = src.sample(i);
    if (!has_w_partial_depth_t_dt(fam, rho, static_cast<int>(cfg.w), static_cast<int>(cfg.t))) ++acc[0];
  });
  r.numerator = counts[0];
  r.denominator = cfg.samples;
  finish_bound(r, cfg,
               multi_switching_bound(double(cfg.m), double(cfg.k), double(cfg.w), double(cfg.t), cfg.p, cfg.eps));
  r.details = {{"bound_formula", "4m^(t/w)(24pk)^t + (24m)^(t+k)*eps"}, {"restriction", src.describe()}};
  return r;
}

ExperimentReport run_searcher_probability_check(const ExperimentConfig& cfg) {
  if (cfg.n > 20) throw CapExceeded("searcher check enumerates 2^n advice strings; n <= 20");
  auto r = start(cfg);
  std::mutex mu;
  json mismatches = json::array();
  const std::uint64_t space = std::uint64_t{1} << cfg.n;
  const auto counts = count_parallel<3>(cfg.samples, [&](std::uint64_t i, std::array<std::uint64_t, 3>& acc) {
    auto rng = stream(cfg, i, kFormulaStream);
    std::uint64_t hits = 0, expected = 0;
    if (!cfg.global) {
      const auto inst = random_witness_instance(rng, cfg.n, cfg.m, cfg.k, cfg.t, cfg.p);
      if (!inst) {
        ++acc[2];
        return;
      }
      const PartialWitness pw = inst->witness.partial();
      for (std::uint64_t y = 0; y < space; ++y) {
        const auto res = witness_search(inst->f, inst->rho, pw, int_assignment(y, cfg.n));
        if (const auto* w = std::get_if<Witness>(&res); w && *w == inst->witness) ++hits;
      }
      expected = space >> inst->witness.size();
    } else {
      const auto inst = random_global_witness_instance(rng, cfg.n, cfg.m, cfg.terms, cfg.k, cfg.w, cfg.t,
                                                       cfg.max_stages, cfg.p);
      if (!inst) {
        ++acc[2];
        return;
      }
      const GlobalPartialWitness gpw = inst->witness.partial();
      for (std::uint64_t y = 0; y < space; ++y) {
        const auto res = global_witness_search(inst->family, inst->rho, gpw, int_assignment(y, cfg.n));
        if (const auto* w = std::get_if<GlobalWitness>(&res); w && *w == inst->witness) ++hits;
      }
      expected = space >> inst->witness.size();
    }
    ++acc[1];
    if (hits == expected) {
      ++acc[0];
    } else {
      std::lock_guard lock(mu);
      mismatches.push_back({{"sample", i}, {"hits", hits}, {"expected", expected}});
    }
  });
  r.numerator = counts[0];
  r.denominator = counts[1];
  finish_exact(r);
  r.details = {{"instances", counts[1]}, {"generation_failures", counts[2]}, {"mismatches", mismatches}};
  return r;
}

ExperimentReport run_cnf_tester_check(const ExperimentConfig& cfg) {
  if (cfg.n > 20) throw CapExceeded("CNF tester check enumerates 2^n inputs; n <= 20");
  auto r = start(cfg);
  const std::uint64_t space = std::uint64_t{1} << cfg.n;
  const auto counts = count_parallel<5>(cfg.samples, [&](std::uint64_t i, std::array<std::uint64_t, 5>& acc) {
    auto rng = stream(cfg, i, kFormulaStream);
    bool agree = true, small = true;
    if (!cfg.global) {
      const auto inst = random_witness_instance(rng, cfg.n, cfg.m, cfg.k, cfg.t, cfg.p);
      if (!inst) {
        ++acc[4];
        return;
      }
      // Lambda: the stars of rho plus a few random extra coordinates.
      BitVec lam = inst->rho.star_set().bits() | random_subset(rng, cfg.n, 0.25).bits();
      const IndexSet lambda = IndexSet::from_bits(std::move(lam));
      const CnfFormula h = build_witness_cnf(inst->f, lambda, inst->witness);
      for (std::uint64_t v = 0; v < space && agree; ++v) {
        const BitVec x = int_assignment(v, cfg.n);
        agree = h.eval(x) == is_witness(inst->f, restriction_from(lambda, x), inst->witness);
      }
      small = h.measures().size_wires <= inst->f.measures().size_wires;
    } else {
      const auto inst = random_global_witness_instance(rng, cfg.n, cfg.m, cfg.terms, cfg.k, cfg.w, cfg.t,
                                                       cfg.max_stages, cfg.p);
      if (!inst) {
        ++acc[4];
        return;
      }
      BitVec lam = inst->rho.star_set().bits() | random_subset(rng, cfg.n, 0.25).bits();
      const IndexSet lambda = IndexSet::from_bits(std::move(lam));
      const CnfFormula h = build_global_witness_cnf(inst->family, lambda, inst->witness);
      for (std::uint64_t v = 0; v < space && agree; ++v) {
        const BitVec x = int_assignment(v, cfg.n);
        agree = h.eval(x) == is_global_witness(inst->family, restriction_from(lambda, x), inst->witness);
      }
      std::size_t stage_sum = 0, largest = inst->family.size();
      for (std::size_t L : inst->witness.formulas) stage_sum += inst->family[L].measures().size_wires;
      for (const auto& f : inst->family) largest = std::max(largest, f.measures().size_wires);
      const std::size_t wires = h.measures().size_wires;
      small = wires <= stage_sum && wires <= largest * largest;
    }
    ++acc[1];
    if (agree && small) ++acc[0];
    if (!agree) ++acc[2];
    if (!small) ++acc[3];
  });
  r.numerator = counts[0];
  r.denominator = counts[1];
  finish_exact(r);
  r.details = {{"instances", counts[1]},
               {"disagreements", counts[2]},
               {"size_violations", counts[3]},
               {"generation_failures", counts[4]}};
  return r;
}

ExperimentReport run_canonical_check(const ExperimentConfig& cfg) {
  if (cfg.n > 16) throw CapExceeded("canonical check enumerates completions; n <= 16");
  auto r = start(cfg);
  const auto counts = count_parallel<4>(cfg.samples, [&](std::uint64_t i, std::array<std::uint64_t, 4>& acc) {
    auto rng = stream(cfg, i, kFormulaStream);
    const DnfFormula f = random_dnf(rng, cfg.n, cfg.m, cfg.k);
    const Restriction rho = random_restriction(rng, cfg.n, cfg.p);
    const auto stars = rho.stars();
    bool sound = true;
    std::size_t max_queries = 0;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << stars.size()) && sound; ++v) {
      BitVec alpha(cfg.n);
      for (std::size_t q = 0; q < stars.size(); ++q)
        if ((v >> q) & 1u) alpha.set(stars[q]);
      const auto tr = canonical_dt_run(f, rho, Restriction::full(alpha));
      const Restriction z = compose(rho, Restriction::full(alpha));
      const bool value = f.eval(z.assignment());
      sound = tr.outcome == (value ? CanonicalOutcome::One : CanonicalOutcome::Zero);
      max_queries = std::max(max_queries, tr.queries);
    }
    const std::size_t cdt = cdt_depth(f, rho);
    const int dt = dt_depth_exact(f, rho);
    const bool dominates = cdt >= static_cast<std::size_t>(dt) && cdt == max_queries;
    if (sound && dominates) ++acc[0];
    if (!sound) ++acc[1];
    if (!dominates) ++acc[2];
    acc[3] += cdt - static_cast<std::size_t>(dt);
  });
  r.numerator = counts[0];
  r.denominator = cfg.samples;
  finish_exact(r);
  r.details = {{"unsound", counts[1]},
               {"dominance_violations", counts[2]},
               {"mean_cdt_minus_dt", cfg.samples ? double(counts[3]) / double(cfg.samples) : 0.0}};
  return r;
}

ExperimentReport run_refutation_check(const ExperimentConfig& cfg) {
  auto r = start(cfg);
  const int w = static_cast<int>(cfg.w), t = static_cast<int>(cfg.t);
  const auto counts = count_parallel<5>(cfg.samples, [&](std::uint64_t i, std::array<std::uint64_t, 5>& acc) {
    auto rng = stream(cfg, i, kFormulaStream);
    const auto fam = random_family(rng, cfg.m, cfg.n, cfg.terms, cfg.k);
    const Restriction rho = random_restriction(rng, cfg.n, cfg.p);
    const bool feasible = has_w_partial_depth_t_dt(fam, rho, w, t);
    const auto ref = find_powerful_refutation(fam, rho, w, t);
    bool ok;
    if (feasible) {
      ++acc[1];
      ok = !ref.has_value();
    } else {
      ++acc[2];
      ok = ref.has_value() && is_powerful_refutation(fam, rho, ref->z, ref->beta, w, t);
      if (!ref) ++acc[3];
      if (ref && !ref->guided) ++acc[4];
    }
    if (ok) ++acc[0];
  });
  r.numerator = counts[0];
  r.denominator = cfg.samples;
  finish_exact(r);
  r.details = {{"feasible", counts[1]}, {"infeasible", counts[2]}, {"missing_refutations", counts[3]},
               {"unguided", counts[4]}};
  return r;
}

namespace {

std::vector<TruthTable> circuit_suite(const ExperimentConfig& cfg, json& info) {
  std::vector<TruthTable> tables;
  const auto& c = cfg.circuits;
  const std::size_t count = c.value("random_depth3", std::size_t{0});
  const std::size_t top = c.value("top", std::size_t{4}), mid = c.value("mid", std::size_t{4});
  const std::size_t width = c.value("width", cfg.k);
  for (std::size_t i = 0; i < count; ++i) {
    CounterRng rng(cfg.seed ^ 0xC1C1C1C1ull, i);
    tables.push_back(TruthTable::of(random_depth3_circuit(rng, cfg.n, top, mid, width)));
  }
  info["random_depth3"] = count;
  if (c.contains("terms_up_to")) {
    // every conjunction of at most K literals
    const std::size_t K = c.at("terms_up_to").get<std::size_t>();
    std::size_t made = 0;
    for (std::size_t size = 1; size <= std::min(K, cfg.n); ++size) {
      std::vector<std::size_t> vars(size);
      auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
        if (pos == size) {
          for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << size); ++signs) {
            std::vector<Literal> lits;
            for (std::size_t q = 0; q < size; ++q)
              lits.push_back(Literal{static_cast<std::uint32_t>(vars[q]), bool((signs >> q) & 1u)});
            tables.push_back(TruthTable::of(DnfFormula(cfg.n, {Term(std::move(lits))})));
            ++made;
          }
          return;
        }
        for (std::size_t v = start; v < cfg.n; ++v) {
          vars[pos] = v;
          self(self, pos + 1, v + 1);
        }
      };
      rec(rec, 0, 0);
    }
    info["terms"] = made;
  }
  if (c.value("adversarial", false)) {
    // tribes of width 3 and a balanced width-k CNF
    std::vector<Term> tribes;
    for (std::size_t v = 0; v + 3 <= cfg.n; v += 3)
      tribes.emplace_back(std::vector<Literal>{Literal{std::uint32_t(v), false}, Literal{std::uint32_t(v + 1), false},
                                               Literal{std::uint32_t(v + 2), false}});
    tables.push_back(TruthTable::of(DnfFormula(cfg.n, std::move(tribes))));
    CnfFormula h(cfg.n);
    for (std::size_t v = 0; v + 2 <= cfg.n; v += 2)
      h.add_clause(Term(std::vector<Literal>{Literal{std::uint32_t(v), false}, Literal{std::uint32_t(v + 1), true}}));
    tables.push_back(TruthTable::of(h));
    info["adversarial"] = 2;
  }
  return tables;
}

GeneratorPtr generator_under_test(const ExperimentConfig& cfg, json& info) {
  json desc = cfg.generator;
  std::optional<std::size_t> hybrid;
  if (desc.contains("hybrid")) {
    hybrid = desc.at("hybrid").get<std::size_t>();
    desc.erase("hybrid");
  }
  GeneratorPtr g = generator_from_json(desc, cfg.n);
  info["generator"] = g->descriptor();
  info["seed_bits"] = g->seed_bits();
  if (const auto* cg = dynamic_cast<const ComposedGenerator*>(g.get())) {
    info["schedule"] = to_json(cg->schedule());
    info["schedule_overridden"] = cg->spec().overrides.any();
    info["layout"] = cg->layout();
  }
  if (hybrid) {
    auto cg = std::dynamic_pointer_cast<const ComposedGenerator>(g);
    if (!cg) throw MalformedInput("hybrid index needs a composed generator");
    g = std::make_shared<HybridGenerator>(cg, *hybrid);
    info["hybrid"] = *hybrid;
  }
  return g;
}

}  // namespace

ExperimentReport run_fooling_test(const ExperimentConfig& cfg) {
  auto r = start(cfg);
  json info;
  const GeneratorPtr g = generator_under_test(cfg, info);
  const auto tables = circuit_suite(cfg, info);
  if (tables.empty()) throw MalformedInput("fooling test needs a non-empty circuit suite");
  BiasOptions opts;
  opts.allow_monte_carlo = true;
  opts.samples = cfg.samples;
  opts.rng_seed = cfg.seed;
  opts.exhaustive_cap_bits = cfg.exhaustive_seed_bits;
  // Bonferroni: the max over the suite holds at cfg.confidence simultaneously.
  opts.confidence = 1.0 - (1.0 - cfg.confidence) / static_cast<double>(tables.size());
  const auto est = bias_many(*g, tables, opts);
  std::size_t worst = 0;
  double max_bias = 0.0, max_upper = 0.0;
  std::size_t balanced = 0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    if (est[i].upper > max_upper) {
      max_upper = est[i].upper;
      worst = i;
    }
    max_bias = std::max(max_bias, est[i].bias);
    if (est[i].uniform_mean > 0.05 && est[i].uniform_mean < 0.95) ++balanced;
  }
  r.numerator = est[worst].hits;
  r.denominator = est[worst].trials;
  r.exact = est[worst].exhaustive;
  r.bound = cfg.eps;
  r.pass = max_upper <= cfg.eps;
  // The interval columns carry the worst circuit's bias, the quantity compared to eps.
  r.ci_lower = est[worst].lower;
  r.ci_upper = est[worst].upper;
  info["per_circuit_confidence"] = opts.confidence;
  info["circuits"] = tables.size();
  info["balanced_circuits"] = balanced;
  info["max_bias"] = max_bias;
  info["max_bias_upper"] = max_upper;
  info["worst"] = {{"index", worst}, {"estimate", to_json(est[worst])}};
  info["exhaustive"] = est[worst].exhaustive;
  r.details = std::move(info);
  return r;
}

ExperimentReport run_composer_identities(const ExperimentConfig& cfg) {
  auto r = start(cfg);
  json info;
  json desc = cfg.generator;
  const auto g = std::dynamic_pointer_cast<const ComposedGenerator>(generator_from_json(desc, cfg.n));
  if (!g) throw MalformedInput("composer identities need a composed generator");
  info["layout"] = g->layout();
  info["schedule"] = to_json(g->schedule());
  const std::size_t n = cfg.n, w = g->buckets();
  const auto& acc = g->accounting();
  std::uint64_t checks = 0, passed = 0;
  auto record = [&](const char* name, bool ok, json extra = json::object()) {
    ++checks;
    passed += ok;
    extra["pass"] = ok;
    info[name] = std::move(extra);
  };

  // Accounting identity and contiguous, disjoint slices.
  record("accounting",
         acc.total == acc.hash + acc.noise + w * acc.child_each && acc.children == w * acc.child_each &&
             g->noise_offset() == acc.hash && g->child_offset(0) == acc.hash + acc.noise &&
             g->child_offset(w) == acc.total && g->seed_bits() == acc.total,
         to_json(acc));

  // Bucket partition for every hash seed (sampled beyond 2^20).
  {
    const std::size_t hb = acc.hash;
    const bool exhaustive = hb <= 20;
    const std::uint64_t count = exhaustive ? (std::uint64_t{1} << hb) : cfg.samples;
    bool ok = true;
    for (std::uint64_t s = 0; s < count && ok; ++s) {
      BitVec seed(acc.total);
      const BitVec hs = exhaustive ? seed_from_integer(s, hb) : CounterRng(cfg.seed, s).bits(hb);
      for (std::size_t q = 0; q < hb; ++q) seed.set(q, hs.test(q));
      const auto h = g->hash_at(seed);
      std::vector<std::size_t> sizes(w, 0);
      BitVec covered(n);
      for (std::uint32_t b = 0; b < w; ++b)
        for (std::size_t j = 0; j < n; ++j)
          if (h(static_cast<std::uint32_t>(j)) == b) {
            ok = ok && !covered.test(j);
            covered.set(j);
            ++sizes[b];
          }
      std::size_t total = 0;
      for (auto v : sizes) total += v;
      ok = ok && total == n && covered.count() == n;
    }
    record("partition", ok, {{"hash_seeds", count}, {"exhaustive", exhaustive}});
  }

  // Coordinate identity, hybrid 0, determinism and slice locality on random seeds.
  {
    bool ident = true, hyb0 = true, determ = true, local = true;
    for (std::uint64_t s = 0; s < cfg.samples; ++s) {
      CounterRng rng(cfg.seed ^ 0xA5A5ull, s);
      const BitVec seed = rng.bits(acc.total);
      const BitVec out = g->expand(seed);
      const auto h = KwiseHash::sample(seed, 0, n, w, g->schedule().hash_independence_used);
      const BitVec y = g->noise().expand(seed.slice(g->noise_offset(), acc.noise));
      std::vector<BitVec> xs(w);
      for (std::size_t c = 0; c < w; ++c) xs[c] = g->child().expand(seed.slice(g->child_offset(c), acc.child_each));
      for (std::size_t j = 0; j < n; ++j) ident = ident && out.test(j) == (y.test(j) != xs[h(std::uint32_t(j))].test(j));
      hyb0 = hyb0 && g->hybrid_generate(0, seed, BitVec()) == out;
      determ = determ && g->expand(seed) == out;
      if (acc.child_each > 0) {
        const std::size_t c = rng.below(w);
        BitVec flipped = seed;
        flipped.flip(g->child_offset(c) + rng.below(acc.child_each));
        const BitVec diff = g->expand(flipped) ^ out;
        for (std::size_t j : diff.ones()) local = local && h(std::uint32_t(j)) == c;
      }
    }
    record("coordinate_identity", ident, {{"seeds", cfg.samples}});
    record("hybrid_zero", hyb0, {{"seeds", cfg.samples}});
    record("determinism", determ);
    record("slice_locality", local);
  }

  // Hybrid w is uniform: every output appears equally often over all tapes.
  {
    const std::size_t tape_bits = w * n;
    if (tape_bits <= 24) {
      bool ok = true;
      const std::size_t seeds = 4;
      for (std::size_t s = 0; s < seeds && ok; ++s) {
        const BitVec seed = CounterRng(cfg.seed ^ 0x77ull, s).bits(acc.total);
        std::vector<std::uint32_t> hist(std::size_t{1} << n, 0);
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << tape_bits); ++v)
          ++hist[g->hybrid_generate(w, seed, seed_from_integer(v, tape_bits)).low_word()];
        const std::uint64_t expect = std::uint64_t{1} << (tape_bits - n);
        ok = std::all_of(hist.begin(), hist.end(), [&](std::uint32_t c) { return c == expect; });
      }
      record("hybrid_w_uniform", ok, {{"tape_bits", tape_bits}, {"seeds", seeds}});
    } else {
      info["hybrid_w_uniform"] = {{"skipped", "tape of " + std::to_string(tape_bits) + " bits exceeds 24"}};
    }
  }

  r.numerator = passed;
  r.denominator = checks;
  finish_exact(r);
  r.details = std::move(info);
  return r;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.kind == "switch") return run_switching_experiment(cfg);
  if (cfg.kind == "multi-switch") return run_multi_switching_experiment(cfg);
  if (cfg.kind == "searcher") return run_searcher_probability_check(cfg);
  if (cfg.kind == "cnf-tester") return run_cnf_tester_check(cfg);
  if (cfg.kind == "canonical") return run_canonical_check(cfg);
  if (cfg.kind == "refute") return run_refutation_check(cfg);
  if (cfg.kind == "fool") return run_fooling_test(cfg);
  if (cfg.kind == "composer") return run_composer_identities(cfg);
  throw MalformedInput("unknown experiment kind \"" + cfg.kind + "\"");
}

}  // namespace acprg::lab
