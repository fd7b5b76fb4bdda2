#pragma once

#include <cstdint>
#include <random>

namespace horseshoe {

// deterministic sampling helper: every randomized routine takes one of these
// so that a fixed seed reproduces runs bit for bit
struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  // top 53 bits onto [0, 1)
  double u01() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * u01(); }
};

}  // namespace horseshoe
