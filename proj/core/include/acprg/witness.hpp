#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "acprg/bits.hpp"
#include "acprg/canonical.hpp"
#include "acprg/formula.hpp"
#include "acprg/restriction.hpp"

namespace acprg {

/// One query block: positions inside the term's sorted variable list (strictly
/// ascending) and the responses, bit j answering positions[j].
struct WitnessStep {
  std::vector<std::uint8_t> positions;
  std::uint64_t alpha = 0;

  std::size_t size() const noexcept { return positions.size(); }
  bool response(std::size_t j) const noexcept { return (alpha >> j) & 1u; }
  friend bool operator==(const WitnessStep&, const WitnessStep&) = default;
};

struct PartialWitness {
  std::vector<WitnessStep> steps;

  std::size_t r() const noexcept { return steps.size(); }
  std::size_t size() const noexcept;
  friend bool operator==(const PartialWitness&, const PartialWitness&) = default;
};

struct Witness {
  std::vector<std::size_t> ell;
  std::vector<WitnessStep> steps;

  std::size_t r() const noexcept { return steps.size(); }
  std::size_t size() const noexcept;
  PartialWitness partial() const { return PartialWitness{steps}; }
  static Witness complete(const PartialWitness& pw, std::vector<std::size_t> ell);
  friend bool operator==(const Witness&, const Witness&) = default;
};

/// The searchers' ERROR, tagged with the 0-based stage at which it occurred.
struct SearchError {
  std::size_t stage = 0;
  std::string reason;
  friend bool operator==(const SearchError&, const SearchError&) = default;
};

template <typename T>
using SearchResult = std::variant<T, SearchError>;

/// Arithmetic constraints of a partial t-witness for width k: 1 <= r <= t, every s_i >= 1,
/// sum s_i in [t, t+k-1], positions strictly ascending and below k, alpha within s_i bits.
bool satisfies_witness_arithmetic(const PartialWitness& pw, std::size_t k, std::size_t t);

/// Transcript check by deterministic replay of the canonical tree of f|rho: between
/// consecutive ell's every term is falsified, term ell_i is not, its unknown positions are
/// exactly B_i, and only the last response may satisfy its term. Throws MalformedInput
/// when list lengths disagree, ell is out of range, or positions exceed the term.
bool is_witness(const DnfFormula& f, const Restriction& rho, const Witness& wit);
/// is_witness plus the t-witness arithmetic for k = width(f).
bool is_t_witness(const DnfFormula& f, const Restriction& rho, const Witness& wit, std::size_t t);

/// The unique ell making (pw, ell) a witness for rho, if any.
std::optional<Witness> complete_partial_witness(const DnfFormula& f, const Restriction& rho,
                                                const PartialWitness& pw);

/// Witness searcher on z = rho o y.
SearchResult<Witness> witness_search(const DnfFormula& f, const Restriction& rho, const PartialWitness& pw,
                                     const BitVec& y);
/// The same searcher reading only z.
SearchResult<Witness> witness_search_decoupled(const DnfFormula& f, const BitVec& z, const PartialWitness& pw);

/// Absolute variables of step i (ascending).
std::vector<std::size_t> step_vars(const DnfFormula& f, const Witness& wit, std::size_t i);
/// Union of all steps' variables, ascending.
std::vector<std::size_t> witness_vars(const DnfFormula& f, const Witness& wit);
/// The responses of all steps as a partial assignment.
Restriction witness_assignment(const DnfFormula& f, const Witness& wit);

/// Witness recorded from a canonical transcript (positions relative to each queried term).
Witness witness_from_transcript(const DnfFormula& f, const CanonicalTranscript& tr);

/// CNF h over x with h(x) = 1 iff wit is a witness for Lambda[x, *]. Throws MalformedInput
/// if some B_i variable lies outside lambda.
CnfFormula build_witness_cnf(const DnfFormula& f, const IndexSet& lambda, const Witness& wit);

namespace detail {
/// Appends the clauses of one witness stage to h. `fixed` holds the values of lambda
/// variables already committed before this stage (stars elsewhere). Returns false if the
/// stage is statically impossible, in which case h is left unspecified.
bool append_witness_clauses(const DnfFormula& f, const IndexSet& lambda, Restriction fixed, const Witness& wit,
                            CnfFormula& h);
}  // namespace detail

/// JSON with absolute indices: {"ell":[...],"steps":[{"vars":[...],"positions":[...],"alpha":"01"}]}.
nlohmann::json to_json(const DnfFormula& f, const Witness& wit);
nlohmann::json to_json(const PartialWitness& pw);
PartialWitness partial_witness_from_json(const nlohmann::json& j);
/// Reads a witness; steps may give relative "positions" or absolute "vars".
Witness witness_from_json(const DnfFormula& f, const nlohmann::json& j);

}  // namespace acprg
