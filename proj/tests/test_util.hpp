#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace testutil {

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool near_rel(double a, double b, double rtol) {
  double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= rtol * std::max(1.0, scale);
}

// deterministic uniform in [0,1): top 53 bits of the engine output
inline double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace testutil
