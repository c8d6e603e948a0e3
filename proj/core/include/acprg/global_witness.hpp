#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "acprg/partial_dt.hpp"
#include "acprg/witness.hpp"

namespace acprg {

/// (R, L_i, S_i, P_i, beta_i) with S_i = size(P_i). beta_i[q] fixes the q-th smallest
/// variable of I_i, the variable set of the completed W_i.
struct GlobalPartialWitness {
  std::vector<std::size_t> formulas;  // L
  std::vector<PartialWitness> parts;  // P
  std::vector<std::vector<bool>> beta;

  std::size_t R() const noexcept { return parts.size(); }
  std::size_t size() const noexcept;
  friend bool operator==(const GlobalPartialWitness&, const GlobalPartialWitness&) = default;
};

struct GlobalWitness {
  std::vector<std::size_t> formulas;
  std::vector<Witness> parts;
  std::vector<std::vector<bool>> beta;

  std::size_t R() const noexcept { return parts.size(); }
  std::size_t size() const noexcept;
  GlobalPartialWitness partial() const;
  friend bool operator==(const GlobalWitness&, const GlobalWitness&) = default;
};

/// Maximum number of stages a (w,t)-global witness may have: ceil(t / w).
std::size_t max_global_stages(std::size_t w, std::size_t t);

/// Arithmetic constraints: 1 <= R <= ceil(t/w), L non-decreasing and in range, every S_i >= 1,
/// sum S_i in [t, t+k], |beta_i| = S_i, and each P_i satisfies the S_i-witness arithmetic.
bool satisfies_global_arithmetic(const GlobalPartialWitness& gpw, std::size_t m, std::size_t k, std::size_t w,
                                 std::size_t t);

/// Replay: W_i is a witness for F_{L_i} under rho_i, rho_1 = rho, rho_{i+1} = rho_i o beta_i.
bool is_global_witness(const std::vector<DnfFormula>& family, const Restriction& rho, const GlobalWitness& gw);
bool is_global_wt_witness(const std::vector<DnfFormula>& family, const Restriction& rho, const GlobalWitness& gw,
                          std::size_t w, std::size_t t);

/// The stage restrictions rho_1..rho_{R+1}.
std::vector<Restriction> global_stage_restrictions(const std::vector<DnfFormula>& family, const Restriction& rho,
                                                   const GlobalWitness& gw);

std::optional<GlobalWitness> complete_global_partial_witness(const std::vector<DnfFormula>& family,
                                                             const Restriction& rho,
                                                             const GlobalPartialWitness& gpw);

/// Global witness searcher: stage c runs the witness searcher on (F_{L_c}, rho^(c), P_c, y).
SearchResult<GlobalWitness> global_witness_search(const std::vector<DnfFormula>& family, const Restriction& rho,
                                                  const GlobalPartialWitness& gpw, const BitVec& y);

/// AND over stages of the stage witness CNF evaluated against beta_1..beta_{i-1}.
CnfFormula build_global_witness_cnf(const std::vector<DnfFormula>& family, const IndexSet& lambda,
                                    const GlobalWitness& gw);

/// The global witness recorded by a canonical partial decision tree run.
GlobalWitness global_witness_from_run(const std::vector<DnfFormula>& family, const PartialRunRecord& rec);

nlohmann::json to_json(const std::vector<DnfFormula>& family, const GlobalWitness& gw);
nlohmann::json to_json(const GlobalPartialWitness& gpw);
GlobalPartialWitness global_partial_witness_from_json(const nlohmann::json& j);

}  // namespace acprg
