#pragma once

#include <cstdint>

namespace looplab {

/// C(a, b) mod 2 by Lucas: odd iff every binary digit of b is at most the
/// corresponding digit of a. Out-of-range arguments give 0.
constexpr int lucas(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0 || b > a) return 0;
  return (b & ~a) == 0 ? 1 : 0;
}

}  // namespace looplab
