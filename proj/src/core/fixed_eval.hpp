#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <vector>

#include "dioph/number.hpp"
#include "dioph/rational.hpp"

namespace dioph::detail {

using i128 = __int128;

inline constexpr i128 kI128Max = std::numeric_limits<i128>::max();

inline i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

mpz_class to_mpz(i128 v);
i128 from_mpz(const mpz_class& z);

struct FixedInterval {
  i128 lo = 0;
  i128 hi = 0;

  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  i128 abs_lo() const { return lo > 0 ? lo : (hi < 0 ? -hi : 0); }
  i128 abs_hi() const { return lo + hi >= 0 ? hi : -lo; }
};

/// Powers zeta^0..zeta^n as integer intervals at scale 2^B, where B leaves
/// room for sums of n+1 terms with coefficients up to h_max in 125 bits.
struct FixedPowers {
  int n = 0;
  unsigned B = 0;
  std::vector<i128> lo;
  std::vector<i128> hi;
  std::vector<i128> mag;  // max(|lo_i|, |hi_i|)

  static FixedPowers build(const NumberDescriptor& zeta, int n, std::int64_t h_max);

  FixedInterval term(std::int64_t c, int i) const {
    if (c >= 0) return {lo[i] * c, hi[i] * c};
    return {hi[i] * c, lo[i] * c};
  }

  FixedInterval eval(const std::int64_t* c, int len) const {
    FixedInterval s;
    for (int i = 0; i < len; ++i) {
      FixedInterval t = term(c[i], i);
      s.lo += t.lo;
      s.hi += t.hi;
    }
    return s;
  }

  RationalInterval to_rational(const FixedInterval& v) const;
  i128 scale_down(const mpq_class& x) const;  // floor(x 2^B)
  i128 scale_up(const mpq_class& x) const;    // ceil(x 2^B)
};

}  // namespace dioph::detail
