#include "dioph/real_interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cstdio>

#include "dioph/error.hpp"

namespace dioph {

namespace {

double product(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

}  // namespace

RealInterval operator*(const RealInterval& a, const RealInterval& b) {
  double p[4] = {product(a.lo, b.lo), product(a.lo, b.hi), product(a.hi, b.lo),
                 product(a.hi, b.hi)};
  auto [mn, mx] = std::minmax_element(p, p + 4);
  return {detail::down(*mn), detail::up(*mx)};
}

RealInterval operator/(const RealInterval& a, const RealInterval& b) {
  if (b.lo <= 0.0 && b.hi >= 0.0) fail(ErrorCode::DomainError, "interval division by zero");
  double p[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
  auto [mn, mx] = std::minmax_element(p, p + 4);
  return {detail::down(*mn), detail::up(*mx)};
}

namespace {

double log_directed(const mpq_class& x, mpfr_rnd_t rnd) {
  mpfr_t v;
  mpfr_init2(v, 96);
  mpfr_set_q(v, x.get_mpq_t(), rnd);
  mpfr_log(v, v, rnd);
  double d = mpfr_get_d(v, rnd);
  mpfr_clear(v);
  return d;
}

}  // namespace

RealInterval log_interval(const RationalInterval& x) {
  if (x.hi <= 0) fail(ErrorCode::DomainError, "log of a non-positive interval");
  double lo = x.lo <= 0 ? -std::numeric_limits<double>::infinity() : log_directed(x.lo, MPFR_RNDD);
  return {lo, log_directed(x.hi, MPFR_RNDU)};
}

RealInterval log_interval(const mpz_class& x) {
  mpq_class q(x);
  return log_interval(RationalInterval::point(q));
}

std::string render12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace dioph
