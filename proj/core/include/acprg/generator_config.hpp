#pragma once

#include <cstddef>
#include <optional>

#include <nlohmann/json.hpp>

#include "acprg/generator.hpp"

namespace acprg {

/// Builds a generator from a descriptor:
///   {"type": "uniform"|"zero", "n": N}
///   {"type": "kwise", "n": N, "k": K}
///   {"type": "smallbias", "n": N, "b": B}
///   {"type": "xor", "n": N, "parts": [descriptor, ...]}
///   {"type": "composed", ...GeneratorSpec fields}
/// `n` fills in a missing "n" (and is checked against a present one); `default_k`
/// fills in a missing kwise "k".
GeneratorPtr generator_from_json(const nlohmann::json& j, std::optional<std::size_t> n = std::nullopt,
                                 std::optional<std::size_t> default_k = std::nullopt);

}  // namespace acprg
