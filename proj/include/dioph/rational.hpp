#pragma once

#include <gmpxx.h>

#include <string>

namespace dioph {

/// Closed interval [lo, hi] with exact rational endpoints.
struct RationalInterval {
  mpq_class lo;
  mpq_class hi;

  RationalInterval() = default;
  RationalInterval(mpq_class l, mpq_class h);
  static RationalInterval point(const mpq_class& x) { return {x, x}; }

  mpq_class width() const { return hi - lo; }
  bool contains(const mpq_class& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  bool subset_of(const RationalInterval& other) const {
    return other.lo <= lo && hi <= other.hi;
  }

  /// Interval of |x| for x in this interval.
  RationalInterval abs() const;
};

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator+(const RationalInterval& a, const mpq_class& b);
RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);

/// 2^-bits as an exact rational.
mpq_class pow2_neg(unsigned long bits);

/// floor(log2 |x|) for nonzero x; used to size precisions.
long floor_log2(const mpq_class& x);

/// Largest dyadic k/2^bits <= x, and smallest dyadic >= x.
mpq_class round_down_dyadic(const mpq_class& x, unsigned long bits);
mpq_class round_up_dyadic(const mpq_class& x, unsigned long bits);

/// Parse "3/7", "-12", "0.125", "1e-3": exact rational. Throws InvalidArgument.
mpq_class parse_rational(const std::string& text);

/// Decimal rendering for reports: rounds down (lo) or up (hi) to 17 digits.
std::string render_down(const mpq_class& x);
std::string render_up(const mpq_class& x);
double to_double_down(const mpq_class& x);
double to_double_up(const mpq_class& x);

}  // namespace dioph
