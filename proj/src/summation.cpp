#include "annulus/summation.hpp"

#include <cstdlib>

namespace annulus {

Truncation default_truncation() {
  Truncation tr;
  if (const char* env = std::getenv("ANNULUS_METRICS_TAIL_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
      throw DomainError("ANNULUS_METRICS_TAIL_TOL must be a positive number");
    }
    tr.tail_tol = v;
  }
  return tr;
}

}  // namespace annulus
