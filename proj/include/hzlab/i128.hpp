#pragma once
// Checked 128-bit integer helpers for exact convergent arithmetic.
// Magnitudes are capped at 2^126 so that sums of two in-range values cannot
// wrap; overflow is reported, never silently truncated.

#include <cstdint>
#include <string>

#include "hzlab/dd.hpp"

namespace hzlab {

using i128 = __int128;

inline constexpr i128 kI128Cap = i128(1) << 126;

// a*b / a+b with overflow detection against the 2^126 cap. Return false on
// overflow (out untouched).
inline bool checked_mul(i128 a, i128 b, i128& out) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) return false;
  if (r >= kI128Cap || r <= -kI128Cap) return false;
  out = r;
  return true;
}

inline bool checked_add(i128 a, i128 b, i128& out) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) return false;
  if (r >= kI128Cap || r <= -kI128Cap) return false;
  out = r;
  return true;
}

inline std::string i128_to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  char buf[48];
  int pos = 48;
  while (u > 0) {
    buf[--pos] = static_cast<char>('0' + static_cast<int>(u % 10));
    u /= 10;
  }
  std::string s(buf + pos, 48 - pos);
  return neg ? "-" + s : s;
}

// Exact-to-dd conversion (three-double split covers 128 significant bits
// beyond double-double's ~106; the residual is below dd resolution).
inline dd i128_to_dd(i128 v) {
  double d1 = static_cast<double>(v);
  i128 r = v - static_cast<i128>(d1);
  double d2 = static_cast<double>(r);
  i128 r2 = r - static_cast<i128>(d2);
  double d3 = static_cast<double>(r2);
  return dd_add(dd_add(dd(d1), d2), d3);
}

}  // namespace hzlab
