#include "fixed_eval.hpp"

#include <algorithm>

#include "dioph/error.hpp"

namespace dioph::detail {

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

i128 from_mpz(const mpz_class& z) {
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 126) fail(ErrorCode::BudgetExceeded, "fixed-point overflow");
  mpz_class a = abs(z);
  mpz_class hi = a >> 64;
  mpz_class lo = a - (hi << 64);
  unsigned __int128 u = (static_cast<unsigned __int128>(hi.get_ui()) << 64) | lo.get_ui();
  i128 v = static_cast<i128>(u);
  return z < 0 ? -v : v;
}

FixedPowers FixedPowers::build(const NumberDescriptor& zeta, int n, std::int64_t h_max) {
  if (n < 0 || h_max < 1) fail(ErrorCode::InvalidArgument, "bad fixed-point parameters");
  FixedPowers f;
  f.n = n;
  RationalInterval rough = zeta.kind() == NumberKind::Decimal ? zeta.refine(1) : zeta.refine(16);
  mpq_class m = std::max(abs(rough.lo), abs(rough.hi));
  if (m < 1) m = 1;
  mpq_class mag = mpq_class(n + 1) * mpq_class(mpz_class(static_cast<long>(h_max)));
  for (int i = 0; i < n; ++i) mag *= m;
  long need = floor_log2(mag) + 1;
  long b = 125 - need - 1;
  if (b < 24) fail(ErrorCode::BudgetExceeded, "height and degree too large for the fixed-point kernel");
  f.B = static_cast<unsigned>(b);
  long grow = floor_log2(m) + 1;
  unsigned long bits = f.B + static_cast<unsigned long>(n * grow) + 8 + static_cast<unsigned long>(n);
  bits = std::min(bits, zeta.precision_limit());
  RationalInterval z = zeta.refine(bits);
  RationalInterval p = RationalInterval::point(1);
  for (int i = 0; i <= n; ++i) {
    f.lo.push_back(f.scale_down(p.lo));
    f.hi.push_back(f.scale_up(p.hi));
    f.mag.push_back(std::max(f.lo.back() < 0 ? -f.lo.back() : f.lo.back(),
                             f.hi.back() < 0 ? -f.hi.back() : f.hi.back()));
    if (i < n) {
      p = p * z;
      p = {round_down_dyadic(p.lo, bits + 4), round_up_dyadic(p.hi, bits + 4)};
    }
  }
  return f;
}

i128 FixedPowers::scale_down(const mpq_class& x) const {
  mpz_class num = x.get_num();
  num <<= B;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
  return from_mpz(q);
}

i128 FixedPowers::scale_up(const mpq_class& x) const {
  mpz_class num = x.get_num();
  num <<= B;
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
  return from_mpz(q);
}

RationalInterval FixedPowers::to_rational(const FixedInterval& v) const {
  mpz_class d = 1;
  d <<= B;
  mpq_class lo(to_mpz(v.lo), d), hi(to_mpz(v.hi), d);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

}  // namespace dioph::detail
