#pragma once

#include <cstdint>
#include <string>

#include "bfly/errors.hpp"

namespace bfly {

/// Butterfly and caterpillar totals. Real graphs reach ~5e14 butterflies and
/// the per-pair binomials of adversarial inputs can exceed 64 bits.
__extension__ using Count = unsigned __int128;

inline Count checked_add(Count a, Count b) {
  Count out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError("128-bit accumulator overflow");
  }
  return out;
}

inline Count checked_mul(Count a, Count b) {
  Count out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError("128-bit multiplication overflow");
  }
  return out;
}

/// C(c, 2) in widened arithmetic; exact for every 64-bit c.
inline Count choose2(std::uint64_t c) {
  if (c < 2) return 0;
  Count wide = c;
  return wide * (wide - 1) / 2;
}

std::string to_string(Count value);

inline double to_double(Count value) { return static_cast<double>(value); }

inline bool fits_u64(Count value) {
  return value <= static_cast<Count>(UINT64_MAX);
}

}  // namespace bfly
