#include "dioph/spanconds.hpp"

#include <algorithm>

#include "dioph/error.hpp"

namespace dioph {

namespace {

void require_even(int n) {
  if (n < 2 || n % 2 != 0) fail(ErrorCode::OddN, "Lambda_n needs an even n >= 2, got " + std::to_string(n));
}

}  // namespace

GluedTriple GluedTriple::from_polys(int n, const IntegerPolynomial& a, const IntegerPolynomial& b,
                                    const IntegerPolynomial& c, std::size_t k) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  GluedTriple t;
  t.n = n;
  t.k = k;
  for (const auto* p : {&a, &b, &c}) {
    if (p->degree() > n) fail(ErrorCode::InvalidArgument, "triple member exceeds degree n");
    auto v = p->padded(static_cast<std::size_t>(n) + 1);
    t.h.insert(t.h.end(), v.begin(), v.end());
  }
  return t;
}

GluedTriple GluedTriple::from_sequence(const BestApproxSequence& seq, std::size_t k) {
  if (k < 2 || k + 1 > seq.size())
    fail(ErrorCode::IndexOutOfRange, "triple index " + std::to_string(k) + " needs records k-1..k+1");
  return from_polys(seq.n, seq.at(k - 1).poly, seq.at(k).poly, seq.at(k + 1).poly, k);
}

IntegerPolynomial GluedTriple::block(int j) const {
  if (j < 0 || j > 2) fail(ErrorCode::IndexOutOfRange, "triple block index");
  auto first = h.begin() + j * (n + 1);
  return IntegerPolynomial(std::vector<mpz_class>(first, first + n + 1));
}

IntMatrix build_lambda(const GluedTriple& t) {
  require_even(t.n);
  if (t.h.size() != static_cast<std::size_t>(3 * t.n + 3))
    fail(ErrorCode::InvalidArgument, "glued vector must have length 3n+3");
  const int half = t.n / 2, size = 3 * t.n / 2;
  IntMatrix m(size, size);
  for (int j = 0; j < 3; ++j)
    for (int s = 0; s < half; ++s)
      for (int i = 0; i <= t.n; ++i) m((i + s) % size, j * half + s) = t.h[j * (t.n + 1) + i];
  return m;
}

mpz_class phi(const GluedTriple& t) { return bareiss_determinant(build_lambda(t)); }

LemurResult lemur_check(const GluedTriple& t) {
  LemurResult r;
  IntMatrix lambda = build_lambda(t);
  r.phi = bareiss_determinant(lambda);
  r.phi_nonzero = r.phi != 0;

  const int half = t.n / 2, size = 3 * t.n / 2;
  PolyFamily f;
  f.degree_bound = size - 1;
  for (int j = 0; j < 3; ++j) {
    IntegerPolynomial p = t.block(j);
    for (int s = 0; s < half; ++s) f.members.push_back(p.shifted(s));
  }
  r.family_rank = rank_of_family(f);
  r.span_full = r.family_rank == static_cast<std::size_t>(size);

  auto kernel = rational_kernel(lambda);
  r.kernel_trivial = kernel.empty();
  if (!kernel.empty()) {
    const auto& v = kernel.front();
    for (int j = 0; j < 3; ++j)
      r.witness.emplace_back(std::vector<mpz_class>(v.begin() + j * half, v.begin() + (j + 1) * half));
  }
  return r;
}

int psi_lower_m(int n) { return (3 * n + 1) / 2 - 1; }

PolyFamily span_family(const BestApproxSequence& seq, std::size_t k, int m) {
  if (k < 2 || k + 1 > seq.size())
    fail(ErrorCode::IndexOutOfRange, "span index " + std::to_string(k) + " needs records k-1..k+1 of " +
                                         std::to_string(seq.size()));
  if (m < seq.n) fail(ErrorCode::InvalidArgument, "m must be >= n");
  PolyFamily f;
  f.degree_bound = m;
  for (std::size_t i = k - 1; i <= k + 1; ++i) {
    const auto& p = seq.at(i).poly;
    for (int j = 0; j <= m - p.degree(); ++j) f.members.push_back(p.shifted(j));
  }
  return f;
}

std::size_t span_rank(const BestApproxSequence& seq, std::size_t k, int m) {
  return rank_of_family(span_family(seq, k, m));
}

std::optional<bool> upbo_certificate(const BestApproxSequence& seq, std::size_t k) {
  if (k < 2 || k > seq.size()) fail(ErrorCode::IndexOutOfRange, "certificate index out of range");
  const auto& a = seq.at(k - 1).poly;
  const auto& b = seq.at(k).poly;
  int da = a.degree(), db = b.degree();
  if (da < 1 || db < 1 || poly_gcd(a, b).degree() != 0) return std::nullopt;
  const int m = 2 * seq.n - 1;
  PolyFamily f;
  f.degree_bound = m;
  for (int j = 0; j < db; ++j) f.members.push_back(a.shifted(j));
  for (int j = 0; j < da; ++j) f.members.push_back(b.shifted(j));
  for (int j = db; j <= m - da; ++j) f.members.push_back(a.shifted(j));
  return f.size() == static_cast<std::size_t>(m + 1) && rank_of_family(f) == f.size();
}

PsiEstimate psi_estimate(const BestApproxSequence& seq, std::size_t k_lo, std::size_t k_hi,
                         std::size_t threshold) {
  PsiEstimate e;
  e.n = seq.n;
  e.threshold = threshold;
  if (seq.size() < 3) fail(ErrorCode::EmptyWindow, "fewer than three records");
  e.k_lo = std::max<std::size_t>(2, k_lo);
  e.k_hi = k_hi == 0 ? seq.size() - 1 : std::min(k_hi, seq.size() - 1);
  if (e.k_lo > e.k_hi)
    fail(ErrorCode::EmptyWindow, "window " + std::to_string(k_lo) + ".." + std::to_string(k_hi) +
                                     " holds no admissible k");
  const int lo = psi_lower_m(seq.n), hi = 2 * seq.n - 1;
  for (int m = lo; m <= hi; ++m) {
    e.witnesses[m];
    e.coprime_witnesses[m];
  }
  for (std::size_t k = e.k_lo; k <= e.k_hi; ++k) {
    bool coprime = poly_gcd(seq.at(k - 1).poly, seq.at(k).poly).degree() == 0;
    for (int m = lo; m <= hi; ++m) {
      if (span_rank(seq, k, m) == static_cast<std::size_t>(m + 1)) {
        e.witnesses[m].push_back(k);
        if (coprime) e.coprime_witnesses[m].push_back(k);
      }
    }
    auto cert = upbo_certificate(seq, k);
    if (cert && *cert) ++e.upbo_certified;
    if (seq.n % 2 == 0 && phi(GluedTriple::from_sequence(seq, k)) != 0) ++e.phi_nonzero;
  }
  for (int m = lo; m <= hi; ++m) {
    if (!e.psi_hat && e.witnesses[m].size() >= threshold) e.psi_hat = m;
    if (!e.psi_tilde_hat && e.coprime_witnesses[m].size() >= threshold) e.psi_tilde_hat = m;
  }
  return e;
}

BabiResult babi_check(const BestApproxSequence& seq, std::size_t k, int m) {
  if (k < 2 || k > seq.size()) fail(ErrorCode::IndexOutOfRange, "babi index " + std::to_string(k));
  if (m < seq.n) fail(ErrorCode::InvalidArgument, "m must be >= n");
  const auto& a = seq.at(k - 1).poly;
  const auto& b = seq.at(k).poly;
  PolyFamily f;
  f.degree_bound = m;
  for (const auto* p : {&a, &b})
    for (int j = 0; j <= m - p->degree(); ++j) f.members.push_back(p->shifted(j));
  BabiResult r;
  r.rank_c = rank_of_family(f);
  r.coprime = poly_gcd(a, b).degree() == 0;
  r.bound_generic = r.rank_c >= static_cast<std::size_t>(m - seq.n + 2);
  r.bound_coprime = r.rank_c >= static_cast<std::size_t>(2 * (m - seq.n + 1));
  return r;
}

std::vector<std::size_t> extend_basis(const PolyFamily& independent, const PolyFamily& pool) {
  int bound = std::max(independent.degree_bound, pool.degree_bound);
  for (const auto* f : {&independent, &pool})
    for (const auto& p : f->members) bound = std::max(bound, p.degree());
  const std::size_t dim = static_cast<std::size_t>(bound) + 1;
  EchelonBasis basis(dim);
  for (const auto& p : independent.members)
    if (p.is_zero() || !basis.add(p.padded(dim)))
      fail(ErrorCode::DependentInput, "the starting family is linearly dependent");
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < pool.members.size(); ++i) {
    const auto& p = pool.members[i];
    if (!p.is_zero() && basis.add(p.padded(dim))) picked.push_back(i);
  }
  return picked;
}

}  // namespace dioph
