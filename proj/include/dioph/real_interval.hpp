#pragma once

#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <string>

#include "dioph/rational.hpp"

namespace dioph {

/// Outward-rounded double interval. Every arithmetic step widens each
/// endpoint by one ulp, so the true real value stays enclosed.
struct RealInterval {
  double lo = 0.0;
  double hi = 0.0;

  RealInterval() = default;
  RealInterval(double l, double h) : lo(l), hi(h) {}
  static RealInterval exact(double x) { return {x, x}; }
  static RealInterval of(const mpq_class& x) {
    return {to_double_down(x), to_double_up(x)};
  }

  double mid() const { return lo == hi ? lo : 0.5 * lo + 0.5 * hi; }
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool certainly_less(const RealInterval& o) const { return hi < o.lo; }
};

namespace detail {
inline double down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}
}  // namespace detail

inline RealInterval operator+(const RealInterval& a, const RealInterval& b) {
  return {detail::down(a.lo + b.lo), detail::up(a.hi + b.hi)};
}
inline RealInterval operator-(const RealInterval& a, const RealInterval& b) {
  return {detail::down(a.lo - b.hi), detail::up(a.hi - b.lo)};
}
inline RealInterval operator-(const RealInterval& a) { return {-a.hi, -a.lo}; }
RealInterval operator*(const RealInterval& a, const RealInterval& b);
RealInterval operator/(const RealInterval& a, const RealInterval& b);

inline RealInterval max(const RealInterval& a, const RealInterval& b) {
  return {std::fmax(a.lo, b.lo), std::fmax(a.hi, b.hi)};
}
inline RealInterval min(const RealInterval& a, const RealInterval& b) {
  return {std::fmin(a.lo, b.lo), std::fmin(a.hi, b.hi)};
}
inline RealInterval hull(const RealInterval& a, const RealInterval& b) {
  return {std::fmin(a.lo, b.lo), std::fmax(a.hi, b.hi)};
}

/// Certified natural log of a positive rational interval (MPFR, directed
/// rounding). A zero lower endpoint yields lo = -inf.
RealInterval log_interval(const RationalInterval& x);
RealInterval log_interval(const mpz_class& x);

/// Print with 12 significant digits, the rendering used by ratio reports.
std::string render12(double x);

}  // namespace dioph
