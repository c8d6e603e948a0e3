#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "acprg/global_witness.hpp"
#include "acprg/partial_dt.hpp"

namespace acprg {

struct Refutation {
  BitVec z;
  BitVec beta;
  PartialRunRecord record;
  /// True if the search only needed beta choices that keep the family without a w-partial
  /// tree of the remaining depth; false if the unrestricted fallback was required.
  bool guided = true;
};

/// True iff the canonical partial decision tree on (z, beta) makes at least t queries and
/// every committed set I has |I| >= w.
bool is_powerful_refutation(const std::vector<DnfFormula>& family, const Restriction& rho, const BitVec& z,
                            const BitVec& beta, int w, int t);

/// None if the family under rho has a w-partial depth-t decision tree. Otherwise searches
/// (z, beta) by filling bits as the canonical partial tree reads them: first choosing beta_I
/// so that no w-partial tree of the remaining depth exists, then exhaustively. Unread bits
/// are zero. The result is replayed before it is returned; an empty result with a bad
/// restriction means no powerful refutation exists for this instance.
std::optional<Refutation> find_powerful_refutation(const std::vector<DnfFormula>& family, const Restriction& rho,
                                                   int w, int t, PartialDtOptions options = {});

}  // namespace acprg
