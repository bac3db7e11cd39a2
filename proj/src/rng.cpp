#include "wellopt/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wellopt {

int RngStream::next_int(int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("next_int: empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(hi) - lo + 1;
  // rejection sampling keeps the draw exactly uniform
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t raw;
  do {
    raw = engine_();
  } while (raw >= limit);
  return lo + static_cast<int>(raw % range);
}

double RngStream::next_normal() {
  const double u1 = 1.0 - next_u01();  // (0, 1], keeps log finite
  const double u2 = next_u01();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace wellopt
