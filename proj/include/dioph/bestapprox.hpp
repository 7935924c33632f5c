#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dioph/number.hpp"
#include "dioph/polynomial.hpp"
#include "dioph/real_interval.hpp"

namespace dioph {

struct BestApproxRecord {
  std::size_t k = 0;  // 1-based
  IntegerPolynomial poly;
  mpz_class height;
  RationalInterval value;  // |P(zeta)|, strictly positive
  int degree = 0;
};

struct ApproxNote {
  enum class Kind { Tie, NearTie, EqualIncumbent };
  Kind kind = Kind::Tie;
  std::int64_t height = 0;
  IntegerPolynomial chosen;
  IntegerPolynomial other;
};

const char* to_string(ApproxNote::Kind kind);

struct BestApproxSequence {
  int n = 0;
  Number zeta;
  std::int64_t h_max = 0;
  std::vector<BestApproxRecord> records;
  std::vector<ApproxNote> notes;

  std::size_t size() const { return records.size(); }
  const BestApproxRecord& at(std::size_t k) const;  // 1-based
};

struct BestApproxOptions {
  unsigned long cap = kDefaultPrecisionCap;
  unsigned jobs = 1;
  std::function<void(std::int64_t)> progress;  // called after each height shell
};

/// Records of the best approximation polynomials of degree <= n for zeta,
/// scanning height shells 1..h_max.
BestApproxSequence best_approx_sequence(int n, Number zeta, std::int64_t h_max,
                                        const BestApproxOptions& options = {});

inline constexpr std::uint64_t kDefaultOracleBudget = 200'000'000;

/// Same contract, unpruned: every coefficient vector in the box is evaluated.
BestApproxSequence oracle_best_approx(int n, Number zeta, std::int64_t h_max,
                                      const BestApproxOptions& options = {},
                                      std::uint64_t budget = kDefaultOracleBudget);

/// n = 1 only: for each b the nearest a to b*zeta, compared across b.
BestApproxSequence best_approx_linear(Number zeta, std::int64_t h_max,
                                      const BestApproxOptions& options = {});

/// Records agree polynomial by polynomial; a difference is written to diff.
bool same_records(const BestApproxSequence& a, const BestApproxSequence& b,
                  std::string* diff = nullptr);

/// True when heights strictly increase and values strictly decrease,
/// certified by the stored intervals.
bool monotone_records(const BestApproxSequence& seq);

struct UniformRatioRow {
  std::size_t k = 0;
  RealInterval ratio;        // -log|P_k(zeta)| / log H_{k+1}
  RealInterval running_min;  // over k0 <= i <= k
};

std::vector<UniformRatioRow> uniform_ratio_report(const BestApproxSequence& seq,
                                                  std::size_t k0 = 1);

struct GrowthRow {
  std::size_t k = 0;
  RealInterval rho;  // log H_{k+1} / log H_k
};

std::vector<GrowthRow> ehklar_report(const BestApproxSequence& seq);

/// -log|P(zeta)| / log H as an outward interval (H >= 2).
RealInterval record_exponent(const BestApproxRecord& r);

}  // namespace dioph
