#include "overfit/parallel.hpp"

#include <cstdlib>
#include <string>

namespace overfit {

std::size_t worker_count() {
  std::size_t n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* cap = std::getenv("OVERFIT_FORGE_THREADS")) {
    try {
      const long v = std::stol(cap);
      if (v >= 1) n = std::min(n, static_cast<std::size_t>(v));
      else n = 1;
    } catch (const std::exception&) {
      // unparsable cap: ignore
    }
  }
  return n;
}

}  // namespace overfit
