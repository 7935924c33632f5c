#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "dioph/bestapprox.hpp"
#include "dioph/number.hpp"
#include "dioph/polynomial.hpp"
#include "dioph/real_interval.hpp"

namespace dioph {

/// max(log H(P) - q/m, log|P(zeta)| + q), as a certified interval.
RealInterval lstar(const IntegerPolynomial& p, const mpq_class& q, int m,
                   const NumberDescriptor& zeta);

/// Same, from precomputed log H and log|P(zeta)| (lo = -inf for P(zeta) = 0).
RealInterval lstar_from_logs(const RealInterval& log_h, const RealInterval& log_v,
                             const RealInterval& q, int m);

/// Nonzero canonical polynomials of degree <= m and height <= h_pool,
/// grouped by height. Each group keeps its `keep` smallest values.
class PolynomialPool {
 public:
  struct Entry {
    IntegerPolynomial poly;
    RealInterval log_h;
    RealInterval log_v;  // lo = hi = -inf when P(zeta) = 0
  };

  struct Group {
    std::int64_t height = 0;
    RealInterval log_h;
    std::vector<Entry> entries;  // ascending log_v
    bool truncated = false;
    RealInterval dropped_floor;  // log of a lower bound for the dropped values
  };

  static inline constexpr std::size_t kDefaultKeep = 512;

  PolynomialPool(int m, Number zeta, std::int64_t h_pool, std::size_t keep = kDefaultKeep,
                 unsigned long cap = kDefaultPrecisionCap);

  /// Explicit pool, used by small exhaustive checks.
  PolynomialPool(int m, Number zeta, std::int64_t h_pool, std::vector<IntegerPolynomial> polys,
                 unsigned long cap = kDefaultPrecisionCap);

  int m() const { return m_; }
  const Number& zeta() const { return zeta_; }
  std::int64_t h_pool() const { return h_pool_; }
  bool truncated() const { return truncated_; }
  std::uint64_t enumerated() const { return enumerated_; }
  const std::vector<Group>& groups() const { return groups_; }
  std::size_t size() const;

  /// Below this value of L*(q) no polynomial outside the pool can appear.
  RealInterval certification_line(const RealInterval& q) const;

 private:

  int m_;
  Number zeta_;
  std::int64_t h_pool_;
  bool truncated_ = false;
  std::uint64_t enumerated_ = 0;
  std::vector<Group> groups_;
};

struct SSGraphSample {
  mpq_class q;
  std::vector<RealInterval> values;  // L*_{m,1} .. L*_{m,m+1}
  std::vector<IntegerPolynomial> witnesses;
  bool certified = false;
};

/// Greedy: pool entries in order of L*(q), kept when they raise the rank.
SSGraphSample successive_minima_at(const mpq_class& q, const PolynomialPool& pool);

struct SSGraph {
  int m = 0;
  Number zeta;
  std::int64_t h_pool = 0;
  bool pool_truncated = false;
  std::vector<SSGraphSample> samples;
};

/// Grid q_min + i (q_max - q_min)/steps, i = 0..steps.
SSGraph ss_graph(int m, Number zeta, const mpq_class& q_min, const mpq_class& q_max,
                 unsigned steps, std::int64_t h_pool, unsigned jobs = 1);
SSGraph ss_graph(const PolynomialPool& pool, const mpq_class& q_min, const mpq_class& q_max,
                 unsigned steps, unsigned jobs = 1);

/// Bound C(m, zeta) on |sum_j L*_{m,j}(q)| for q >= 0. From the second
/// convex body theorem, lambda_1...lambda_{m+1} vol(K) lies between
/// 2^{m+1}/(m+1)! and 2^{m+1}. vol(K) <= 2^{m+1} (the slab factor e^-q
/// times the cube factor e^q), and vol(K) >= 2^m min(1, 1/S)^m with
/// S = sum_{i=1..m} |zeta|^i, from the section of the slab over the cube
/// in the last m coordinates. Hence C = max(log (m+1)!, log 2 + m log+ S).
double minkowski_constant(int m, const NumberDescriptor& zeta);

struct SampleResidual {
  mpq_class q;
  RealInterval sum;
  /// L*_{m+1} + (j/(m+1-j)) L*_j, j = 1..m; the bound requires >= -C/(m+1-j).
  std::vector<RealInterval> gimme;
  bool sum_ok = true;
  bool gimme_ok = true;
};

struct MinkowskiReport {
  double constant = 0.0;
  double sup_abs_sum = 0.0;  // upper end over certified samples
  double min_nurmi_slack = 0.0;
  std::size_t certified = 0;
  bool holds = true;
  std::vector<SampleResidual> residuals;
};

/// Throws NoCertifiedSamples.
MinkowskiReport minkowski_check(const SSGraph& graph);

struct CrossingPoint {
  std::size_t k = 0;
  RealInterval q;
};

/// q_k = m (log H_k - log|P_{k-1}(zeta)|)/(m+1) for k = 2..size.
std::vector<CrossingPoint> crossing_points(const BestApproxSequence& seq, int m);

struct ApplyPoint {
  RealInterval w;        // max|P_i(zeta)| = H^-w
  RealInterval q_tilde;  // m/(m+1) (log H - log|P_1(zeta)|)
  RealInterval lhs;      // max_i L*_{P_i}(q~) >= L*_{m,j}(q~)
  RealInterval rhs;      // q~ (m - w)/(m (1 + w))
  bool holds = false;
};

/// The closed forms from log H, log|P_1(zeta)| (lhs left as the P_1 branch).
ApplyPoint apply_point_formula(const RealInterval& log_h, const RealInterval& log_p1, int m);

/// Throws DependentInput when the family is not linearly independent.
ApplyPoint lemma_apply_point(const PolyFamily& polys, int m, const NumberDescriptor& zeta);

struct ElaineResiduals {
  std::size_t samples = 0;
  mpq_class q_lo;
  mpq_class q_hi;
  RealInterval psi_low;   // min L*_1/q
  RealInterval psi_high;  // max L*_1/q
  RealInterval lower;     // (w+1)(1/m + psi_low) - (m+1)/m
  RealInterval upper;     // (what+1)(1/m + psi_high) - (m+1)/m
};

/// Over certified samples with q > 0. Throws NoCertifiedSamples.
ElaineResiduals elaine_residuals(const SSGraph& graph, const RealInterval& w,
                                 const RealInterval& what);

}  // namespace dioph
