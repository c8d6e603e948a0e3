#include "acprg/canonical.hpp"

#include <algorithm>

#include "acprg/error.hpp"

namespace acprg {

QueryOracle restriction_oracle(const Restriction& alpha) {
  return [alpha](std::size_t i) {
    if (i >= alpha.dimension()) throw OracleError("query " + std::to_string(i) + " outside the oracle string");
    if (alpha.is_star(i)) throw OracleError("oracle has no answer for variable " + std::to_string(i));
    return alpha.value(i);
  };
}

std::size_t next_live_term(const DnfFormula& f, const Restriction& x, std::size_t from) {
  for (std::size_t j = from; j < f.term_count(); ++j)
    if (f.term(j).status(x) != TermStatus::Falsified) return j;
  return f.term_count();
}

CanonicalTranscript canonical_dt_run(const DnfFormula& f, const Restriction& rho, const QueryOracle& alpha,
                                     std::optional<std::size_t> budget) {
  if (rho.dimension() != f.dimension()) throw DimensionMismatch("canonical_dt_run: dimensions differ");
  CanonicalTranscript tr;
  Restriction x = rho;
  std::size_t j = 0;
  while (true) {
    j = next_live_term(f, x, j);
    if (j == f.term_count()) {
      tr.outcome = CanonicalOutcome::Zero;
      break;
    }
    const Term& term = f.term(j);
    CanonicalBlock block;
    block.term = j;
    for (const auto& l : term.literals())
      if (x.is_star(l.var)) block.vars.push_back(l.var);
    if (block.vars.empty()) {  // already satisfied: f|x is the constant 1
      tr.outcome = CanonicalOutcome::One;
      break;
    }
    if (budget && tr.queries >= *budget) {
      tr.outcome = CanonicalOutcome::Exhausted;
      break;
    }
    for (auto v : block.vars) {
      const bool a = alpha(v);
      block.response.push_back(a);
      x.fix(v, a);
    }
    tr.queries += block.vars.size();
    tr.blocks.push_back(std::move(block));
    if (term.status(x) == TermStatus::Satisfied) {
      tr.outcome = CanonicalOutcome::One;
      break;
    }
    ++j;
  }
  tr.final_assignment = std::move(x);
  return tr;
}

CanonicalTranscript canonical_dt_run(const DnfFormula& f, const Restriction& rho, const Restriction& alpha,
                                     std::optional<std::size_t> budget) {
  if (alpha.dimension() != f.dimension()) throw DimensionMismatch("canonical_dt_run: oracle length differs");
  return canonical_dt_run(f, rho, restriction_oracle(alpha), budget);
}

namespace {

std::size_t cdt_from(const DnfFormula& f, Restriction& x, std::size_t from) {
  const std::size_t j = next_live_term(f, x, from);
  if (j == f.term_count()) return 0;
  const Term& term = f.term(j);
  std::vector<std::uint32_t> block;
  for (const auto& l : term.literals())
    if (x.is_star(l.var)) block.push_back(l.var);
  if (block.empty()) return 0;
  std::size_t worst = 0;
  const std::uint64_t combos = std::uint64_t{1} << block.size();
  for (std::uint64_t a = 0; a < combos; ++a) {
    for (std::size_t i = 0; i < block.size(); ++i) x.fix(block[i], (a >> i) & 1u);
    if (term.status(x) != TermStatus::Satisfied) worst = std::max(worst, cdt_from(f, x, j + 1));
  }
  for (auto v : block) x.unfix(v);
  return block.size() + worst;
}

}  // namespace

std::size_t cdt_depth(const DnfFormula& f, const Restriction& rho, std::size_t star_cap) {
  if (rho.dimension() != f.dimension()) throw DimensionMismatch("cdt_depth: dimensions differ");
  const DnfFormula g = restrict_dnf(f, rho);
  if (g.support().size() > star_cap)
    throw CapExceeded("cdt_depth: " + std::to_string(g.support().size()) + " live variables exceed cap " +
                      std::to_string(star_cap));
  Restriction x = rho;
  return cdt_from(f, x, 0);
}

nlohmann::json to_json(const CanonicalTranscript& tr) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : tr.blocks) {
    std::string resp;
    for (bool r : b.response) resp += r ? '1' : '0';
    blocks.push_back({{"term", b.term}, {"vars", b.vars}, {"response", resp}});
  }
  const char* outcome = tr.outcome == CanonicalOutcome::Zero ? "0" : tr.outcome == CanonicalOutcome::One ? "1" : "exhausted";
  return {{"blocks", blocks}, {"outcome", outcome}, {"queries", tr.queries}};
}

}  // namespace acprg
