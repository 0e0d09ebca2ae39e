#pragma once

// Helpers shared between the grid model and identity translation units.

#include <cmath>
#include <string>

#include "dchaos/errors.hpp"

namespace dchaos::detail {

/// Number of steps n with t = n step; TimeGrid error when step does not divide t.
inline std::size_t whole_steps(double t, double step, const char* what) {
  if (!(step > 0.0)) fail(ErrorKind::Domain, std::string(what) + " must be positive");
  if (!(t >= 0.0)) fail(ErrorKind::Domain, "time must be >= 0");
  const double ratio = t / step;
  const double n = std::round(ratio);
  if (std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio)) {
    fail(ErrorKind::TimeGrid, std::string(what) + " " + std::to_string(step) + " does not divide t = " +
                                  std::to_string(t));
  }
  return static_cast<std::size_t>(n);
}

}  // namespace dchaos::detail
