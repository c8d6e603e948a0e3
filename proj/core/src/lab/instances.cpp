#include "acprg/lab/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "acprg/canonical.hpp"
#include "acprg/partial_dt.hpp"

namespace acprg::lab {

namespace {

bool bernoulli(CounterRng& rng, double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  int exp = 0;
  if (std::frexp(p, &exp) == 0.5) return rng.dyadic(static_cast<unsigned>(1 - exp));
  return rng.uniform() < p;
}

std::vector<std::size_t> random_vars(CounterRng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  k = std::min(k, n);
  for (std::size_t i = 0; i < k; ++i) std::swap(all[i], all[i + rng.below(n - i)]);
  all.resize(k);
  return all;
}

std::vector<Literal> random_literals(CounterRng& rng, std::size_t n, std::size_t k) {
  std::vector<Literal> lits;
  for (std::size_t v : random_vars(rng, n, k)) lits.push_back(Literal{static_cast<std::uint32_t>(v), rng.bit()});
  return lits;
}

}  // namespace

DnfFormula random_dnf(CounterRng& rng, std::size_t n, std::size_t m, std::size_t k) {
  std::vector<Term> terms;
  terms.reserve(m);
  for (std::size_t i = 0; i < m; ++i) terms.emplace_back(random_literals(rng, n, k));
  return DnfFormula(n, std::move(terms));
}

std::vector<DnfFormula> random_family(CounterRng& rng, std::size_t count, std::size_t n, std::size_t m,
                                      std::size_t k) {
  std::vector<DnfFormula> fam;
  fam.reserve(count);
  for (std::size_t i = 0; i < count; ++i) fam.push_back(random_dnf(rng, n, m, k));
  return fam;
}

IndexSet random_subset(CounterRng& rng, std::size_t n, double p) {
  BitVec in(n);
  for (std::size_t i = 0; i < n; ++i)
    if (bernoulli(rng, p)) in.set(i);
  return IndexSet::from_bits(std::move(in));
}

Restriction restriction_from(const IndexSet& lambda, const BitVec& x) {
  BitVec fixed = ~lambda.bits();
  BitVec values = x & fixed;
  return Restriction::from_parts(std::move(fixed), std::move(values));
}

Restriction random_restriction(CounterRng& rng, std::size_t n, double p) {
  const IndexSet lambda = random_subset(rng, n, p);
  return restriction_from(lambda, rng.bits(n));
}

std::optional<WitnessInstance> random_witness_instance(CounterRng& rng, std::size_t n, std::size_t m, std::size_t k,
                                                       std::size_t t, double p, std::size_t attempts) {
  for (std::size_t a = 0; a < attempts; ++a) {
    DnfFormula f = random_dnf(rng, n, m, k);
    Restriction rho = random_restriction(rng, n, p);
    const BitVec alpha = rng.bits(n);
    const auto tr = canonical_dt_run(f, rho, restriction_oracle(Restriction::full(alpha)));
    if (tr.queries < t) continue;
    Witness full = witness_from_transcript(f, tr);
    Witness cut;
    std::size_t s = 0;
    for (std::size_t i = 0; i < full.r() && s < t; ++i) {
      cut.ell.push_back(full.ell[i]);
      cut.steps.push_back(full.steps[i]);
      s += full.steps[i].size();
    }
    if (cut.r() > t) continue;
    return WitnessInstance{std::move(f), std::move(rho), std::move(cut), t};
  }
  return std::nullopt;
}

std::optional<GlobalWitnessInstance> random_global_witness_instance(CounterRng& rng, std::size_t n,
                                                                    std::size_t count, std::size_t m,
                                                                    std::size_t k, std::size_t w, std::size_t t,
                                                                    std::size_t max_stages, double p,
                                                                    std::size_t attempts) {
  for (std::size_t a = 0; a < attempts; ++a) {
    auto fam = random_family(rng, count, n, m, k);
    Restriction rho = random_restriction(rng, n, p);
    const BitVec z = rng.bits(n), beta = rng.bits(n);
    const auto rec = canonical_partial_dt_run(fam, rho, z, beta, static_cast<int>(w), static_cast<int>(t));
    if (rec.counter < t || rec.steps.empty() || rec.steps.size() > max_stages) continue;
    GlobalWitness gw = global_witness_from_run(fam, rec);
    if (!is_global_wt_witness(fam, rho, gw, w, t)) continue;
    return GlobalWitnessInstance{std::move(fam), std::move(rho), std::move(gw), w, t};
  }
  return std::nullopt;
}

Ac0Circuit random_depth3_circuit(CounterRng& rng, std::size_t n, std::size_t top, std::size_t mid, std::size_t k) {
  Ac0Circuit c(n);
  const GateKind top_kind = rng.bit() ? GateKind::Or : GateKind::And;
  const GateKind mid_kind = top_kind == GateKind::Or ? GateKind::And : GateKind::Or;
  const GateKind bottom_kind = top_kind;
  std::vector<std::uint32_t> mids;
  const std::size_t a = 2 + rng.below(std::max<std::size_t>(top, 2) - 1);
  for (std::size_t i = 0; i < a; ++i) {
    std::vector<std::uint32_t> bottoms;
    const std::size_t b = 2 + rng.below(std::max<std::size_t>(mid, 2) - 1);
    for (std::size_t j = 0; j < b; ++j) {
      const std::size_t width = 1 + rng.below(std::max<std::size_t>(k, 1));
      std::vector<std::uint32_t> ins;
      for (const auto& lit : random_literals(rng, n, width)) ins.push_back(c.add_input(lit));
      bottoms.push_back(c.add_gate(bottom_kind, std::move(ins)));
    }
    mids.push_back(c.add_gate(mid_kind, std::move(bottoms)));
  }
  c.set_output(c.add_gate(top_kind, std::move(mids)));
  return c;
}

}  // namespace acprg::lab
