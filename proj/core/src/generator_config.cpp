#include "acprg/generator_config.hpp"

#include <string>

#include "acprg/composer.hpp"
#include "acprg/error.hpp"

namespace acprg {

GeneratorPtr generator_from_json(const nlohmann::json& j, std::optional<std::size_t> n,
                                 std::optional<std::size_t> default_k) {
  if (!j.is_object() || !j.contains("type")) throw MalformedInput("generator descriptor needs a \"type\"");
  const std::string type = j.at("type").get<std::string>();
  std::size_t len = 0;
  if (j.contains("n")) {
    len = j.at("n").get<std::size_t>();
    if (n && *n != len) throw DimensionMismatch("descriptor n=" + std::to_string(len) + " but context needs " + std::to_string(*n));
  } else if (n) {
    len = *n;
  } else {
    throw MalformedInput("generator descriptor needs \"n\"");
  }
  if (type == "uniform") return std::make_shared<UniformGenerator>(len);
  if (type == "zero") return std::make_shared<ZeroGenerator>(len);
  if (type == "kwise") {
    std::size_t k = 0;
    if (j.contains("k"))
      k = j.at("k").get<std::size_t>();
    else if (default_k)
      k = *default_k;
    else
      throw MalformedInput("kwise descriptor needs \"k\"");
    return std::make_shared<KwiseGenerator>(len, k);
  }
  if (type == "smallbias") {
    if (!j.contains("b")) throw MalformedInput("smallbias descriptor needs \"b\"");
    return std::make_shared<SmallBiasGenerator>(len, j.at("b").get<unsigned>());
  }
  if (type == "xor") {
    if (!j.contains("parts") || !j.at("parts").is_array()) throw MalformedInput("xor descriptor needs \"parts\"");
    std::vector<GeneratorPtr> parts;
    for (const auto& p : j.at("parts")) parts.push_back(generator_from_json(p, len, default_k));
    return std::make_shared<XorGenerator>(std::move(parts));
  }
  if (type == "composed") {
    auto spec_json = j;
    spec_json["n"] = len;
    return make_generator(spec_from_json(spec_json));
  }
  throw MalformedInput("unknown generator type \"" + type + "\"");
}

}  // namespace acprg
