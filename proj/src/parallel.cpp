#include "qpagerank/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace qpr {

std::size_t worker_count() {
  if (const char* env = std::getenv("QRANK_THREADS")) {
    std::size_t value = 0;
    const auto* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc{} && ptr == end && value > 0) return value;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace qpr
