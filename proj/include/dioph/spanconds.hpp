#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <vector>

#include "dioph/bestapprox.hpp"
#include "dioph/matrix.hpp"
#include "dioph/polynomial.hpp"

namespace dioph {

/// Coefficients of three consecutive polynomials of degree <= n, glued into
/// one vector of length 3n+3.
struct GluedTriple {
  int n = 0;
  std::size_t k = 0;
  std::vector<mpz_class> h;

  static GluedTriple from_polys(int n, const IntegerPolynomial& a, const IntegerPolynomial& b,
                                const IntegerPolynomial& c, std::size_t k = 0);
  static GluedTriple from_sequence(const BestApproxSequence& seq, std::size_t k);
  IntegerPolynomial block(int j) const;  // j = 0, 1, 2
};

/// Square matrix of size 3n/2: block j fills columns j*n/2 .. (j+1)*n/2-1,
/// its first column is block j padded with zeros, each further column the
/// previous one shifted down by one place modulo 3n/2.
IntMatrix build_lambda(const GluedTriple& triple);
mpz_class phi(const GluedTriple& triple);

struct LemurResult {
  bool phi_nonzero = false;
  bool span_full = false;
  bool kernel_trivial = false;
  mpz_class phi;
  std::size_t family_rank = 0;
  std::vector<IntegerPolynomial> witness;  // (A, B, C) when the kernel is nontrivial
};

LemurResult lemur_check(const GluedTriple& triple);

/// The family A_{k-1} u A_k u A_{k+1}, A_i = {T^j P_i : 0 <= j <= m - d_i}.
PolyFamily span_family(const BestApproxSequence& seq, std::size_t k, int m);
std::size_t span_rank(const BestApproxSequence& seq, std::size_t k, int m);

int psi_lower_m(int n);  // ceil(3n/2) - 1

struct PsiEstimate {
  int n = 0;
  std::size_t k_lo = 0;
  std::size_t k_hi = 0;
  std::size_t threshold = 3;
  std::map<int, std::vector<std::size_t>> witnesses;          // m -> k with full rank
  std::map<int, std::vector<std::size_t>> coprime_witnesses;  // and gcd(P_{k-1}, P_k) = 1
  std::optional<int> psi_hat;
  std::optional<int> psi_tilde_hat;
  std::size_t upbo_certified = 0;  // k whose Omega_k u Q_k basis checks out
  std::size_t phi_nonzero = 0;     // even n: k in window with Phi_n != 0
};

inline constexpr std::size_t kDefaultPsiThreshold = 3;

/// Window k_lo..k_hi of 1-based indices; each k needs k-1 and k+1 records.
PsiEstimate psi_estimate(const BestApproxSequence& seq, std::size_t k_lo, std::size_t k_hi,
                         std::size_t threshold = kDefaultPsiThreshold);

/// Omega_k u Q_k at m = 2n-1: for coprime P_{k-1}, P_k, a linearly
/// independent subset of B_{k,m} of size m+1. nullopt when not coprime.
std::optional<bool> upbo_certificate(const BestApproxSequence& seq, std::size_t k);

struct BabiResult {
  std::size_t rank_c = 0;
  bool coprime = false;
  bool bound_generic = false;  // rank >= m-n+2
  bool bound_coprime = false;  // rank >= 2(m-n+1), meaningful when coprime
};

/// Rank of A_{k-1} u A_k; k indexes P_k (so P_{k-1} must exist).
BabiResult babi_check(const BestApproxSequence& seq, std::size_t k, int m);

/// Indices into pool which together with `independent` span the whole
/// span of both, chosen greedily. Throws DependentInput.
std::vector<std::size_t> extend_basis(const PolyFamily& independent, const PolyFamily& pool);

}  // namespace dioph
