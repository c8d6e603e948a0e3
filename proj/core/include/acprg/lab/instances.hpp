#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "acprg/circuit.hpp"
#include "acprg/formula.hpp"
#include "acprg/global_witness.hpp"
#include "acprg/lab/rng.hpp"
#include "acprg/restriction.hpp"
#include "acprg/witness.hpp"

namespace acprg::lab {

/// m terms, each over exactly min(k, n) distinct variables with random signs.
DnfFormula random_dnf(CounterRng& rng, std::size_t n, std::size_t m, std::size_t k);
std::vector<DnfFormula> random_family(CounterRng& rng, std::size_t count, std::size_t n, std::size_t m,
                                      std::size_t k);

/// Each coordinate is a star with probability p, otherwise a uniform bit. Dyadic p is
/// sampled exactly.
Restriction random_restriction(CounterRng& rng, std::size_t n, double p);
/// Each coordinate in the set with probability p.
IndexSet random_subset(CounterRng& rng, std::size_t n, double p);
/// Lambda[x, *]: stars on lambda, x elsewhere.
Restriction restriction_from(const IndexSet& lambda, const BitVec& x);

struct WitnessInstance {
  DnfFormula f;
  Restriction rho;
  Witness witness;
  std::size_t t = 0;
};

/// A random (F, rho) and a t-witness read off a random path of its canonical tree, cut
/// at the first step where the query count reaches t. None after `attempts` misses.
std::optional<WitnessInstance> random_witness_instance(CounterRng& rng, std::size_t n, std::size_t m, std::size_t k,
                                                       std::size_t t, double p, std::size_t attempts = 200);

struct GlobalWitnessInstance {
  std::vector<DnfFormula> family;
  Restriction rho;
  GlobalWitness witness;
  std::size_t w = 0;
  std::size_t t = 0;
};

/// A (w,t)-global witness recorded from a random run of the canonical partial tree, with
/// at most max_stages stages.
std::optional<GlobalWitnessInstance> random_global_witness_instance(CounterRng& rng, std::size_t n,
                                                                    std::size_t count, std::size_t m,
                                                                    std::size_t k, std::size_t w, std::size_t t,
                                                                    std::size_t max_stages, double p,
                                                                    std::size_t attempts = 400);

/// Random depth-3 circuit: top gate of fan-in in [2, top], middle gates of fan-in in
/// [2, mid], bottom gates of width in [1, k]. The top gate kind is random.
Ac0Circuit random_depth3_circuit(CounterRng& rng, std::size_t n, std::size_t top, std::size_t mid, std::size_t k);

}  // namespace acprg::lab
