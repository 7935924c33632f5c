#include "dioph/rational.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <regex>

#include "dioph/error.hpp"

namespace dioph {

RationalInterval::RationalInterval(mpq_class l, mpq_class h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) fail(ErrorCode::InvalidArgument, "interval with lo > hi");
}

RationalInterval RationalInterval::abs() const {
  if (lo >= 0) return *this;
  if (hi <= 0) return {-hi, -lo};
  mpq_class m = -lo;
  return {0, m > hi ? m : hi};
}

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

RationalInterval operator+(const RationalInterval& a, const mpq_class& b) {
  return {a.lo + b, a.hi + b};
}

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
  mpq_class p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  auto [mn, mx] = std::minmax_element(p, p + 4);
  return {*mn, *mx};
}

mpq_class pow2_neg(unsigned long bits) {
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), 2, bits);
  return mpq_class(mpz_class(1), d);
}

long floor_log2(const mpq_class& x) {
  if (x == 0) fail(ErrorCode::InvalidArgument, "floor_log2 of zero");
  mpz_class num = abs(x.get_num());
  const mpz_class& den = x.get_den();
  long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  // 2^e <= |x| test
  mpz_class lhs = num, rhs = den;
  if (e >= 0)
    rhs <<= e;
  else
    lhs <<= -e;
  if (lhs < rhs) --e;
  return e;
}

mpq_class round_down_dyadic(const mpq_class& x, unsigned long bits) {
  mpz_class n = x.get_num();
  n <<= bits;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), x.get_den().get_mpz_t());
  mpz_class d = 1;
  d <<= bits;
  mpq_class r(q, d);
  r.canonicalize();
  return r;
}

mpq_class round_up_dyadic(const mpq_class& x, unsigned long bits) {
  mpz_class n = x.get_num();
  n <<= bits;
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), x.get_den().get_mpz_t());
  mpz_class d = 1;
  d <<= bits;
  mpq_class r(q, d);
  r.canonicalize();
  return r;
}

mpq_class parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  if (!text.empty() && text[0] == '+') text.erase(0, 1);
  static const std::regex frac(R"(^([+-]?\d+)/(\d+)$)");
  static const std::regex dec(R"(^([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?$)");
  std::smatch m;
  if (std::regex_match(text, m, frac)) {
    mpz_class n(m[1].str(), 10), d(m[2].str(), 10);
    if (d == 0) fail(ErrorCode::InvalidArgument, "zero denominator in '" + raw + "'");
    mpq_class r(n, d);
    r.canonicalize();
    return r;
  }
  if (std::regex_match(text, m, dec) && (m[2].length() > 0 || m[3].length() > 0)) {
    std::string digits = m[2].str() + m[3].str();
    long exp10 = -static_cast<long>(m[3].length());
    if (m[4].matched) exp10 += std::stol(m[4].str());
    mpz_class n(digits.empty() ? std::string("0") : digits, 10);
    if (m[1].str() == "-") n = -n;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    mpq_class r = exp10 < 0 ? mpq_class(n, p) : mpq_class(n * p);
    r.canonicalize();
    return r;
  }
  fail(ErrorCode::InvalidArgument, "not a rational number: '" + raw + "'");
}

namespace {

// 17 significant digits, rounded toward -inf (down) or +inf (up).
std::string render_directed(const mpq_class& x, bool up) {
  if (x == 0) return "0";
  mpfr_t v;
  mpfr_init2(v, 256);
  mpfr_set_q(v, x.get_mpq_t(), up ? MPFR_RNDU : MPFR_RNDD);
  char buf[128];
  mpfr_snprintf(buf, sizeof buf, up ? "%.16RUe" : "%.16RDe", v);
  mpfr_clear(v);
  return buf;
}

double to_double_directed(const mpq_class& x, mpfr_rnd_t rnd) {
  mpfr_t v;
  mpfr_init2(v, 53);
  mpfr_set_q(v, x.get_mpq_t(), rnd);
  double d = mpfr_get_d(v, rnd);
  mpfr_clear(v);
  return d;
}

}  // namespace

std::string render_down(const mpq_class& x) { return render_directed(x, false); }
std::string render_up(const mpq_class& x) { return render_directed(x, true); }
double to_double_down(const mpq_class& x) { return to_double_directed(x, MPFR_RNDD); }
double to_double_up(const mpq_class& x) { return to_double_directed(x, MPFR_RNDU); }

}  // namespace dioph
