#pragma once

#include <cmath>
#include <cstdint>

namespace randtest::detail {

// ceil with a snap tolerance so products that are integers in exact
// arithmetic (e.g. 0.99 * 0.1 * 1000) do not round up spuriously.
inline std::int64_t ceil_snap(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-9 * std::max(1.0, std::abs(x))) {
    return std::int64_t(r);
  }
  return std::int64_t(std::ceil(x));
}

}  // namespace randtest::detail
