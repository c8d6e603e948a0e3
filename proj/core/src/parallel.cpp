#include "acprg/parallel.hpp"

#include <cstdlib>
#include <string>

namespace acprg {

std::size_t worker_count() {
  if (const char* env = std::getenv("ACPRG_WORKERS"); env && *env) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace acprg
