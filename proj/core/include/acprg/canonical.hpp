#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "acprg/formula.hpp"
#include "acprg/restriction.hpp"

namespace acprg {

/// Answers a queried variable index; throws OracleError when it cannot.
using QueryOracle = std::function<bool(std::size_t)>;

/// An oracle reading answers from a restriction; a starred cell raises OracleError.
QueryOracle restriction_oracle(const Restriction& alpha);

struct CanonicalBlock {
  std::size_t term = 0;
  std::vector<std::size_t> vars;  // absolute indices, ascending
  std::vector<bool> response;     // response[i] answers vars[i]
};

enum class CanonicalOutcome : std::uint8_t { Zero, One, Exhausted };

struct CanonicalTranscript {
  std::vector<CanonicalBlock> blocks;
  CanonicalOutcome outcome = CanonicalOutcome::Zero;
  std::size_t queries = 0;

  /// The accumulated assignment: rho with every block's responses written in.
  Restriction final_assignment;
};

/// Runs the canonical decision tree of f|rho against the oracle: terms are scanned in
/// order, the first term not falsified by the accumulated assignment has its unknown
/// variables queried as one block (ascending), and the run returns 1 as soon as a term is
/// satisfied. With a query budget the run stops with Exhausted once that many queries
/// were made without a decision.
CanonicalTranscript canonical_dt_run(const DnfFormula& f, const Restriction& rho, const QueryOracle& alpha,
                                     std::optional<std::size_t> budget = std::nullopt);
CanonicalTranscript canonical_dt_run(const DnfFormula& f, const Restriction& rho, const Restriction& alpha,
                                     std::optional<std::size_t> budget = std::nullopt);

/// The first term of f not falsified by x (the term the canonical tree queries next),
/// scanning from `from`; term_count() if none.
std::size_t next_live_term(const DnfFormula& f, const Restriction& x, std::size_t from = 0);

/// Depth of the canonical tree of f|rho: maximum number of queries over all answers.
std::size_t cdt_depth(const DnfFormula& f, const Restriction& rho, std::size_t star_cap = 24);

nlohmann::json to_json(const CanonicalTranscript& tr);

}  // namespace acprg
