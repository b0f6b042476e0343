#include "kingman/parallel.hpp"

#include <cstdlib>
#include <string>

#include "kingman/errors.hpp"

namespace kingman {

std::size_t resolve_threads(std::optional<std::size_t> requested) {
  if (requested) {
    if (*requested < 1) throw ParameterError("thread count must be >= 1");
    return *requested;
  }
  if (const char* env = std::getenv("KINGMAN_THREADS"); env != nullptr && *env != '\0') {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(env, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != std::string(env).size() || v < 1) {
      throw ParameterError(std::string("KINGMAN_THREADS must be a positive integer, got '") + env + "'");
    }
    return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace kingman
