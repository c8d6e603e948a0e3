#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "acprg/global_witness.hpp"
#include "acprg/witness.hpp"

namespace acprg {

/// Visits every partial witness of size exactly s for width k with at most t steps:
/// compositions of s into parts in [1, k], position sets of each part inside [k], and
/// every response string. Returns the number visited. Throws CapExceeded when the
/// count would exceed `limit`.
std::uint64_t for_each_partial_witness(std::size_t k, std::size_t t, std::size_t s,
                                       const std::function<void(const PartialWitness&)>& visit,
                                       std::uint64_t limit = std::uint64_t{1} << 26);
std::uint64_t count_partial_witnesses(std::size_t k, std::size_t t, std::size_t s);

/// Visits every global partial witness of size S over m formulas of width k for (w, t):
/// R <= ceil(t/w) stages, non-decreasing formula lists, compositions of S into R parts,
/// a partial witness of size S_i per stage, and every beta.
std::uint64_t for_each_global_partial_witness(std::size_t m, std::size_t k, std::size_t w, std::size_t t,
                                              std::size_t S,
                                              const std::function<void(const GlobalPartialWitness&)>& visit,
                                              std::uint64_t limit = std::uint64_t{1} << 26);
std::uint64_t count_global_partial_witnesses(std::size_t m, std::size_t k, std::size_t w, std::size_t t,
                                             std::size_t S);

}  // namespace acprg
