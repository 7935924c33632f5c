#include "dioph/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "dioph/error.hpp"
#include "dioph/matrix.hpp"

namespace dioph {

IntegerPolynomial::IntegerPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

IntegerPolynomial::IntegerPolynomial(std::initializer_list<long> coeffs) {
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

IntegerPolynomial IntegerPolynomial::from_int64(std::span<const std::int64_t> coeffs) {
  std::vector<mpz_class> v;
  v.reserve(coeffs.size());
  for (std::int64_t c : coeffs) {
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), static_cast<long>(c));
    v.push_back(z);
  }
  return IntegerPolynomial(std::move(v));
}

IntegerPolynomial IntegerPolynomial::monomial(unsigned j) {
  std::vector<mpz_class> v(j + 1);
  v[j] = 1;
  return IntegerPolynomial(std::move(v));
}

void IntegerPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class IntegerPolynomial::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : mpz_class(0);
}

mpz_class IntegerPolynomial::height() const {
  mpz_class h = 0;
  for (const auto& c : coeffs_)
    if (abs(c) > h) h = abs(c);
  return h;
}

mpz_class IntegerPolynomial::content() const {
  mpz_class g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IntegerPolynomial IntegerPolynomial::primitive_part() const {
  if (is_zero()) return *this;
  mpz_class g = content();
  if (leading() < 0) g = -g;
  std::vector<mpz_class> v(coeffs_.size());
  for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(v[i].get_mpz_t(), coeffs_[i].get_mpz_t(), g.get_mpz_t());
  return IntegerPolynomial(std::move(v));
}

IntegerPolynomial IntegerPolynomial::canonical() const {
  return is_canonical() ? *this : -*this;
}

IntegerPolynomial IntegerPolynomial::shifted(unsigned j) const {
  if (is_zero()) return *this;
  std::vector<mpz_class> v(j, mpz_class(0));
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return IntegerPolynomial(std::move(v));
}

IntegerPolynomial IntegerPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<mpz_class> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntegerPolynomial(std::move(v));
}

IntegerPolynomial IntegerPolynomial::operator-() const {
  std::vector<mpz_class> v(coeffs_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = -coeffs_[i];
  return IntegerPolynomial(std::move(v));
}

mpq_class IntegerPolynomial::evaluate(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + mpq_class(*it);
  return acc;
}

int IntegerPolynomial::sign_at(const mpq_class& x) const { return sgn(evaluate(x)); }

std::vector<mpz_class> IntegerPolynomial::padded(std::size_t dim) const {
  if (static_cast<int>(dim) <= degree())
    fail(ErrorCode::InvalidArgument, "padding dimension below the degree");
  std::vector<mpz_class> v(dim, mpz_class(0));
  std::copy(coeffs_.begin(), coeffs_.end(), v.begin());
  return v;
}

std::string IntegerPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& c = coeffs_[i];
    if (c == 0) continue;
    mpz_class a = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (i == 0) {
      os << a;
      continue;
    }
    if (a != 1) os << a << "*";
    os << "T";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::string IntegerPolynomial::to_json() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
  os << "]";
  return os.str();
}

IntegerPolynomial operator+(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<mpz_class> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a.coeff(i) + b.coeff(i);
  return IntegerPolynomial(std::move(v));
}

IntegerPolynomial operator-(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  return a + (-b);
}

IntegerPolynomial operator*(const mpz_class& s, const IntegerPolynomial& p) {
  std::vector<mpz_class> v(p.coeffs().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = s * p.coeffs()[i];
  return IntegerPolynomial(std::move(v));
}

bool lex_less(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a.coeff(i), b.coeff(i));
    if (c != 0) return c < 0;
  }
  return false;
}

bool equal_up_to_sign(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  return a == b || a == -b;
}

IntegerPolynomial multiply(const IntegerPolynomial& p, const IntegerPolynomial& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<mpz_class> v(p.coeffs().size() + q.coeffs().size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    for (std::size_t j = 0; j < q.coeffs().size(); ++j) v[i + j] += p.coeffs()[i] * q.coeffs()[j];
  return IntegerPolynomial(std::move(v));
}

bool divide_exact(const IntegerPolynomial& a, const IntegerPolynomial& b,
                  IntegerPolynomial& quotient) {
  if (b.is_zero()) fail(ErrorCode::InvalidArgument, "division by the zero polynomial");
  if (a.is_zero()) {
    quotient = {};
    return true;
  }
  if (a.degree() < b.degree()) return false;
  std::vector<mpz_class> r = a.coeffs();
  std::vector<mpz_class> q(a.degree() - b.degree() + 1);
  const mpz_class& lb = b.leading();
  for (int i = a.degree() - b.degree(); i >= 0; --i) {
    mpz_class& top = r[i + b.degree()];
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return false;
    mpz_divexact(q[i].get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    for (int j = 0; j <= b.degree(); ++j) r[i + j] -= q[i] * b.coeffs()[j];
  }
  for (const auto& c : r)
    if (c != 0) return false;
  quotient = IntegerPolynomial(std::move(q));
  return true;
}

namespace {

// Pseudo-remainder of a by b with a positive multiplier, so signs survive.
IntegerPolynomial pseudo_remainder(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  std::vector<mpz_class> r = a.coeffs();
  int db = b.degree();
  mpz_class lb = abs(b.leading());
  int sign_b = sgn(b.leading());
  while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
    int dr = static_cast<int>(r.size()) - 1;
    mpz_class top = r.back() * sign_b;
    for (auto& c : r) c *= lb;
    for (int j = 0; j <= db; ++j) r[dr - db + j] -= top * b.coeffs()[j];
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return IntegerPolynomial(std::move(r));
}

}  // namespace

IntegerPolynomial poly_gcd(const IntegerPolynomial& p, const IntegerPolynomial& q) {
  if (p.is_zero() && q.is_zero()) fail(ErrorCode::InvalidArgument, "gcd of two zero polynomials");
  IntegerPolynomial a = p.is_zero() ? p : p.primitive_part();
  IntegerPolynomial b = q.is_zero() ? q : q.primitive_part();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntegerPolynomial r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.is_zero() ? r : r.primitive_part();
  }
  return a.primitive_part();
}

PolyFamily shift_family(const IntegerPolynomial& p, unsigned j_max) {
  PolyFamily f;
  f.degree_bound = std::max(p.degree(), 0) + static_cast<int>(j_max);
  for (unsigned j = 0; j <= j_max; ++j) f.members.push_back(p.shifted(j));
  return f;
}

std::size_t rank_of_family(const PolyFamily& family) {
  std::size_t dim = static_cast<std::size_t>(family.degree_bound) + 1;
  IntMatrix m(family.members.size(), dim);
  for (std::size_t r = 0; r < family.members.size(); ++r) {
    const auto& p = family.members[r];
    if (p.degree() >= static_cast<int>(dim))
      fail(ErrorCode::InvalidArgument, "family member exceeds the degree bound");
    for (int c = 0; c <= p.degree(); ++c) m(r, c) = p.coeffs()[c];
  }
  return bareiss_rank(std::move(m));
}

PolyFamily omega_family(const IntegerPolynomial& p, const IntegerPolynomial& q) {
  int a = p.degree(), b = q.degree();
  if (a < 1 || b < 1) fail(ErrorCode::InvalidArgument, "Omega needs degrees >= 1");
  PolyFamily f;
  f.degree_bound = a + b - 1;
  for (int j = 0; j < b; ++j) f.members.push_back(p.shifted(j));
  for (int j = 0; j < a; ++j) f.members.push_back(q.shifted(j));
  return f;
}

bool lainyweg_check(const IntegerPolynomial& p, const IntegerPolynomial& q) {
  return rank_of_family(omega_family(p, q)) == static_cast<std::size_t>(p.degree() + q.degree());
}

namespace {

struct SmallPoly {
  std::vector<std::int64_t> c;
  std::int64_t h = 0;
};

std::int64_t product_height(const SmallPoly& p, const SmallPoly& q, std::vector<std::int64_t>& buf) {
  buf.assign(p.c.size() + q.c.size() - 1, 0);
  for (std::size_t i = 0; i < p.c.size(); ++i)
    if (p.c[i] != 0)
      for (std::size_t j = 0; j < q.c.size(); ++j) buf[i + j] += p.c[i] * q.c[j];
  std::int64_t h = 0;
  for (auto v : buf) h = std::max(h, v < 0 ? -v : v);
  return h;
}

IntegerPolynomial to_poly(const SmallPoly& p) { return IntegerPolynomial::from_int64(p.c); }

}  // namespace

GelfondScan gelfond_scan(int n, std::int64_t h_max, std::uint64_t sample_count,
                         std::uint64_t rng_seed) {
  if (n < 1 || h_max < 1) fail(ErrorCode::InvalidArgument, "gelfond_scan needs n >= 1, H >= 1");
  if (h_max > 1'000'000) fail(ErrorCode::InvalidArgument, "gelfond_scan height too large");
  GelfondScan scan;
  scan.n = n;
  scan.h_max = h_max;
  scan.constant = gelfond_constant(n);
  scan.exhaustive = sample_count == 0;

  bool have = false;
  // ratio a/b kept as exact integer pairs until the end
  std::int64_t min_num = 0, min_den = 1, max_num = 0, max_den = 1;
  SmallPoly min_p, min_q, max_p, max_q;
  std::vector<std::int64_t> buf;
  auto consider = [&](const SmallPoly& p, const SmallPoly& q) {
    std::int64_t num = product_height(p, q, buf);
    std::int64_t den = p.h * q.h;
    ++scan.pairs;
    // compare num/den with stored fractions by cross multiplication in 128 bits
    if (!have || static_cast<__int128>(num) * min_den < static_cast<__int128>(min_num) * den) {
      min_num = num, min_den = den, min_p = p, min_q = q;
    }
    if (!have || static_cast<__int128>(num) * max_den > static_cast<__int128>(max_num) * den) {
      max_num = num, max_den = den, max_p = p, max_q = q;
    }
    have = true;
  };

  if (scan.exhaustive) {
    std::uint64_t side = static_cast<std::uint64_t>(2 * h_max + 1);
    double total = std::pow(static_cast<double>(side), n + 1);
    if (total > 5e4) fail(ErrorCode::BudgetExceeded, "exhaustive gelfond scan too large; sample instead");
    std::vector<SmallPoly> polys;
    std::vector<std::int64_t> c(n + 1, -h_max);
    for (;;) {
      int top = n;
      while (top >= 0 && c[top] == 0) --top;
      if (top >= 0 && c[top] > 0) {
        SmallPoly p;
        p.c.assign(c.begin(), c.begin() + top + 1);
        for (auto v : p.c) p.h = std::max(p.h, v < 0 ? -v : v);
        polys.push_back(std::move(p));
      }
      int i = 0;
      while (i <= n && c[i] == h_max) c[i++] = -h_max;
      if (i > n) break;
      ++c[i];
    }
    for (std::size_t i = 0; i < polys.size(); ++i)
      for (std::size_t j = i; j < polys.size(); ++j) consider(polys[i], polys[j]);
  } else {
    std::mt19937_64 rng(rng_seed);
    std::uniform_int_distribution<std::int64_t> coef(-h_max, h_max);
    auto draw = [&]() {
      for (;;) {
        SmallPoly p;
        p.c.resize(n + 1);
        for (auto& v : p.c) v = coef(rng);
        while (!p.c.empty() && p.c.back() == 0) p.c.pop_back();
        if (p.c.empty()) continue;
        for (auto v : p.c) p.h = std::max(p.h, v < 0 ? -v : v);
        return p;
      }
    };
    for (std::uint64_t s = 0; s < sample_count; ++s) {
      SmallPoly p = draw();
      SmallPoly q = draw();
      consider(p, q);
    }
  }
  scan.min = {to_poly(min_p), to_poly(min_q), mpq_class(mpz_class(static_cast<long>(min_num)), mpz_class(static_cast<long>(min_den)))};
  scan.max = {to_poly(max_p), to_poly(max_q), mpq_class(mpz_class(static_cast<long>(max_num)), mpz_class(static_cast<long>(max_den)))};
  scan.min.ratio.canonicalize();
  scan.max.ratio.canonicalize();
  return scan;
}

double gelfond_constant(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "gelfond_constant needs n >= 1");
  double binom = 1.0;
  int k = n / 2;
  for (int i = 1; i <= k; ++i) binom = binom * (n - k + i) / i;
  return std::max(static_cast<double>(n + 1), binom * binom * std::sqrt(2.0 * n + 1.0));
}

}  // namespace dioph
