#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dioph/bestapprox.hpp"
#include "dioph/real_interval.hpp"
#include "dioph/spanconds.hpp"

namespace dioph {

double theta(int n);  // (3(n-1) + sqrt(n^2 - 2n + 5))/2
double sigma(int n);  // (2n - 1 + sqrt(2n^2 - 2n + 1))/2

bool bound_t_in_domain(int n, double t);  // ceil(3n/2) - 1 <= t <= 2n - 1
/// Both are evaluated outside the t domain too; callers report DomainError.
double dbound(int n, double t);
double ebound(int n, double t);        // plus root
double ebound_minus(int n, double t);  // the other root, for inspection

double buschlei_bound(int n);  // n - 1/2 + sqrt(n^2 - 2n + 5/4)

/// Root in (n, 2n-1) of (n-1)w/(w-n) - w + 1 = ((n-1)/(w-n))^n, by exact
/// rational bisection of the cleared form. Throws BracketFailure.
double wroot(int n, double tol = 1e-13);
/// w(n) < 2n-2, decided exactly from the sign of the cleared form at 2n-2.
bool wroot_below(int n);
double frwe_bound(int n);  // max(2n-2, w(n))

struct BoundsRow {
  int n = 0;
  double t = 0.0;
  bool t_in_domain = true;
  double theta = 0.0;
  double sigma = 0.0;
  double w = 0.0;
  double frwe = 0.0;
  double d = 0.0;
  double e = 0.0;
  double e_minus = 0.0;
};

/// One row per (n, t); t from ceil(3n/2)-1 to 2n-1 when `ts` is empty.
std::vector<BoundsRow> bounds_table(int n_lo, int n_hi, const std::vector<double>& ts = {});

struct ExponentEstimate {
  int n = 0;
  bool decimal_input = false;
  std::int64_t h_max = 0;
  std::size_t records = 0;
  std::size_t k0 = 1;
  std::size_t window_hi = 0;
  RealInterval w_lower;     // max over records with H >= 2 of -log|P_k|/log H_k
  std::size_t w_argmax = 0;
  bool has_w = false;
  RealInterval what_proxy;  // min over k >= k0 of -log|P_k|/log H_{k+1}
  std::size_t what_argmin = 0;
  bool has_what = false;
  /// Allowance log(2(n+1))/log H_{argmin+1} used when judging upper bounds.
  double tolerance = 0.0;
};

ExponentEstimate estimate_exponents(const BestApproxSequence& seq, std::size_t k0 = 1);

enum class AuditStatus { Consistent, Violated, NotApplicable, Indeterminate };
const char* to_string(AuditStatus s);

struct AuditRow {
  std::string id;
  std::string formula;
  std::string values;
  AuditStatus status = AuditStatus::Indeterminate;
  bool unconditional = false;
};

struct AuditInputs {
  ExponentEstimate est;
  std::optional<ExponentEstimate> lower;  // same number at degree n-1
  std::optional<PsiEstimate> psi;
  std::size_t threshold = kDefaultPsiThreshold;
  std::optional<int> algebraic_degree;
};

struct AuditReport {
  int n = 0;
  std::int64_t h_max = 0;
  std::vector<AuditRow> rows;
  bool violation = false;
  bool decimal_input = false;
};

AuditReport audit(const AuditInputs& in);

/// Judge an upper bound on the uniform exponent from a proxy interval.
AuditStatus judge_upper(const RealInterval& proxy, double bound, double tolerance);

}  // namespace dioph
