#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace dioph {

/// Integer polynomial c0 + c1 T + ... + cd T^d, constant term first.
/// The coefficient vector is kept trimmed so that degree() is exact; the
/// zero polynomial has no coefficients and degree -1.
class IntegerPolynomial {
 public:
  IntegerPolynomial() = default;
  explicit IntegerPolynomial(std::vector<mpz_class> coeffs);
  IntegerPolynomial(std::initializer_list<long> coeffs);
  static IntegerPolynomial from_int64(std::span<const std::int64_t> coeffs);
  static IntegerPolynomial monomial(unsigned j);

  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const mpz_class& leading() const { return coeffs_.back(); }
  /// Coefficient of T^i, zero beyond the degree.
  mpz_class coeff(std::size_t i) const;

  /// Naive height: the largest coefficient modulus.
  mpz_class height() const;
  mpz_class content() const;
  IntegerPolynomial primitive_part() const;

  /// Sign-normalised so the leading coefficient is positive.
  IntegerPolynomial canonical() const;
  bool is_canonical() const { return is_zero() || leading() > 0; }

  IntegerPolynomial shifted(unsigned j) const;  // T^j * P
  IntegerPolynomial derivative() const;
  IntegerPolynomial operator-() const;

  mpq_class evaluate(const mpq_class& x) const;
  int sign_at(const mpq_class& x) const;

  /// Coefficients padded to length `dim` (dim must exceed the degree).
  std::vector<mpz_class> padded(std::size_t dim) const;

  std::string to_string() const;   // e.g. "64*T - 49"
  std::string to_json() const;     // e.g. "[-49,64]"

  friend bool operator==(const IntegerPolynomial&, const IntegerPolynomial&) = default;

 private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

IntegerPolynomial operator+(const IntegerPolynomial& a, const IntegerPolynomial& b);
IntegerPolynomial operator-(const IntegerPolynomial& a, const IntegerPolynomial& b);
IntegerPolynomial operator*(const mpz_class& s, const IntegerPolynomial& p);

/// Lexicographic order on the constant-first coefficient vectors, padded
/// with zeros; this is the tie-break used when two polynomials give the
/// same value.
bool lex_less(const IntegerPolynomial& a, const IntegerPolynomial& b);

bool equal_up_to_sign(const IntegerPolynomial& a, const IntegerPolynomial& b);

IntegerPolynomial multiply(const IntegerPolynomial& p, const IntegerPolynomial& q);

/// Exact division; returns false when b does not divide a over the integers.
bool divide_exact(const IntegerPolynomial& a, const IntegerPolynomial& b,
                  IntegerPolynomial& quotient);

/// Primitive gcd with positive leading coefficient (primitive-part Euclid).
IntegerPolynomial poly_gcd(const IntegerPolynomial& p, const IntegerPolynomial& q);

/// A set of polynomials whose coefficient vectors live in dimension m+1.
struct PolyFamily {
  std::vector<IntegerPolynomial> members;
  int degree_bound = 0;  // m

  std::size_t size() const { return members.size(); }
};

/// {P, TP, ..., T^j_max P}. The ambient bound is deg P + j_max.
PolyFamily shift_family(const IntegerPolynomial& p, unsigned j_max);

/// Exact rank over Q of the members' coefficient vectors (Bareiss).
std::size_t rank_of_family(const PolyFamily& family);

/// Rank of Omega = {P..T^(b-1)P, Q..T^(a-1)Q} equals a+b.
bool lainyweg_check(const IntegerPolynomial& p, const IntegerPolynomial& q);

/// The Omega set itself, with ambient bound a+b-1.
PolyFamily omega_family(const IntegerPolynomial& p, const IntegerPolynomial& q);

/// Height-product ratios H(PQ)/(H(P)H(Q)).
struct GelfondWitness {
  IntegerPolynomial p;
  IntegerPolynomial q;
  mpq_class ratio;
};

struct GelfondScan {
  int n = 0;
  std::int64_t h_max = 0;
  std::uint64_t pairs = 0;
  bool exhaustive = false;
  GelfondWitness min;
  GelfondWitness max;
  double constant = 0.0;  // a valid K(n) from Mahler-measure estimates
};

/// sample_count == 0 requests the exhaustive scan over all pairs.
GelfondScan gelfond_scan(int n, std::int64_t h_max, std::uint64_t sample_count,
                         std::uint64_t rng_seed);

/// K(n) = max(n+1, C(n, floor(n/2))^2 * sqrt(2n+1)). Upper side: H(PQ) is a
/// sum of at most n+1 products. Lower side: H(P) <= C(d, d/2) M(P) with M the
/// Mahler measure, M multiplicative, and M(PQ) <= ||PQ||_2 <= sqrt(2n+1) H(PQ).
double gelfond_constant(int n);

}  // namespace dioph
