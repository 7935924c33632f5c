#include "dioph/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dioph/error.hpp"

namespace dioph {

double theta(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  double d = static_cast<double>(n);
  return (3.0 * (d - 1.0) + std::sqrt(d * d - 2.0 * d + 5.0)) / 2.0;
}

double sigma(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  double d = static_cast<double>(n);
  return (2.0 * d - 1.0 + std::sqrt(2.0 * d * d - 2.0 * d + 1.0)) / 2.0;
}

bool bound_t_in_domain(int n, double t) {
  return t >= static_cast<double>((3 * n + 1) / 2 - 1) && t <= 2.0 * n - 1.0;
}

double dbound(int n, double t) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "n must be >= 2");
  double d = static_cast<double>(n);
  double disc = 4 * t * t + 17 * d * d - 16 * t * d + 8 * t - 18 * d + 5;
  if (disc < 0) fail(ErrorCode::DomainError, "negative discriminant");
  return (2 * t - d + 1 + std::sqrt(disc)) / 2;
}

namespace {
double ebound_disc(int n, double t) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "n must be >= 2");
  double d = static_cast<double>(n);
  double disc = t * t - 4 * t * d + 8 * d * d + 2 * t - 12 * d + 5;
  if (disc < 0) fail(ErrorCode::DomainError, "negative discriminant");
  return disc;
}
}  // namespace

double ebound(int n, double t) { return (t + 1 + std::sqrt(ebound_disc(n, t))) / 2; }
double ebound_minus(int n, double t) { return (t + 1 - std::sqrt(ebound_disc(n, t))) / 2; }

double buschlei_bound(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  double d = static_cast<double>(n);
  return d - 0.5 + std::sqrt(d * d - 2 * d + 1.25);
}

namespace {

// (n-1) w (w-n)^(n-1) - (w-1)(w-n)^n - (n-1)^n, same sign as F on w > n
int cleared_sign(int n, const mpq_class& w) {
  mpq_class x = w - n, p = 1;
  for (int i = 0; i < n - 1; ++i) p *= x;
  mpz_class c;
  mpz_ui_pow_ui(c.get_mpz_t(), static_cast<unsigned long>(n - 1), static_cast<unsigned long>(n));
  mpq_class g = mpq_class(n - 1) * w * p - (w - 1) * p * x - mpq_class(c);
  return sgn(g);
}

}  // namespace

double wroot(int n, double tol) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "n must be >= 2");
  if (!(tol > 0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  // walk down from 2n-1 (itself a root of the cleared form) in steps of 1/8
  const mpq_class top(2 * n - 1);
  mpq_class lo, hi;
  bool found = false;
  std::ostringstream samples;
  for (int j = 1; j < 8 * (n - 1); ++j) {
    mpq_class w = top - mpq_class(j, 8);
    int s = cleared_sign(n, w);
    if (j <= 4) samples << " G(" << w.get_d() << ")" << (s < 0 ? "<0" : s > 0 ? ">0" : "=0");
    if (s == 0) return w.get_d();
    if (s < 0) {
      lo = w;
      hi = w + mpq_class(1, 8);
      found = true;
      break;
    }
  }
  if (!found || cleared_sign(n, hi) <= 0)
    fail(ErrorCode::BracketFailure, "no sign change in (n, 2n-1) for n=" + std::to_string(n) + ";" + samples.str());
  while (mpq_class(hi - lo).get_d() > tol / 4) {
    mpq_class mid = (lo + hi) / 2;
    int s = cleared_sign(n, mid);
    if (s == 0) return mid.get_d();
    (s < 0 ? lo : hi) = mid;
  }
  return mpq_class((lo + hi) / 2).get_d();
}

bool wroot_below(int n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "n must be >= 2");
  if (n == 2) return false;  // 2n-2 = n is the excluded endpoint
  return cleared_sign(n, mpq_class(2 * n - 2)) > 0;
}

double frwe_bound(int n) { return std::max(2.0 * n - 2.0, wroot(n)); }

std::vector<BoundsRow> bounds_table(int n_lo, int n_hi, const std::vector<double>& ts) {
  if (n_lo < 2 || n_hi < n_lo) fail(ErrorCode::InvalidArgument, "need 2 <= n_lo <= n_hi");
  std::vector<BoundsRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    std::vector<double> tv = ts;
    if (tv.empty())
      for (int t = (3 * n + 1) / 2 - 1; t <= 2 * n - 1; ++t) tv.push_back(t);
    double w = wroot(n);
    for (double t : tv) {
      BoundsRow r;
      r.n = n;
      r.t = t;
      r.t_in_domain = bound_t_in_domain(n, t);
      r.theta = theta(n);
      r.sigma = sigma(n);
      r.w = w;
      r.frwe = std::max(2.0 * n - 2.0, w);
      r.d = dbound(n, t);
      r.e = ebound(n, t);
      r.e_minus = ebound_minus(n, t);
      rows.push_back(r);
    }
  }
  return rows;
}

ExponentEstimate estimate_exponents(const BestApproxSequence& seq, std::size_t k0) {
  if (seq.size() == 0) fail(ErrorCode::InvalidArgument, "empty sequence");
  if (k0 < 1) fail(ErrorCode::InvalidArgument, "k0 must be >= 1");
  ExponentEstimate e;
  e.n = seq.n;
  e.decimal_input = seq.zeta && seq.zeta->kind() == NumberKind::Decimal;
  e.h_max = seq.h_max;
  e.records = seq.size();
  e.k0 = k0;
  e.window_hi = seq.size() - 1;
  for (std::size_t k = 1; k <= seq.size(); ++k) {
    const auto& r = seq.at(k);
    if (r.height < 2) continue;
    RealInterval ratio = (-log_interval(r.value)) / log_interval(r.height);
    if (!e.has_w || ratio.lo > e.w_lower.lo) {
      e.w_lower = ratio;
      e.w_argmax = k;
      e.has_w = true;
    }
  }
  for (std::size_t k = k0; k < seq.size(); ++k) {
    RealInterval ratio = (-log_interval(seq.at(k).value)) / log_interval(seq.at(k + 1).height);
    if (!e.has_what || ratio.hi < e.what_proxy.hi) {
      e.what_proxy = ratio;
      e.what_argmin = k;
      e.has_what = true;
    }
  }
  if (e.has_what)
    e.tolerance = std::log(2.0 * (e.n + 1)) / log_interval(seq.at(e.what_argmin + 1).height).lo;
  return e;
}

const char* to_string(AuditStatus s) {
  switch (s) {
    case AuditStatus::Consistent: return "consistent";
    case AuditStatus::Violated: return "violated";
    case AuditStatus::NotApplicable: return "not-applicable";
    case AuditStatus::Indeterminate: return "indeterminate";
  }
  return "?";
}

AuditStatus judge_upper(const RealInterval& proxy, double bound, double tolerance) {
  if (proxy.hi <= bound) return AuditStatus::Consistent;
  if (proxy.lo <= bound + tolerance) return AuditStatus::Indeterminate;
  return AuditStatus::Violated;
}

namespace {

std::string fmt(double x) { return render12(x); }
std::string fmt(const RealInterval& x) { return "[" + render12(x.lo) + ", " + render12(x.hi) + "]"; }

AuditStatus soften(AuditStatus s) {
  return s == AuditStatus::Violated ? AuditStatus::Indeterminate : s;
}

}  // namespace

AuditReport audit(const AuditInputs& in) {
  const ExponentEstimate& e = in.est;
  const int n = e.n;
  AuditReport rep;
  rep.n = n;
  rep.h_max = e.h_max;
  rep.decimal_input = e.decimal_input;
  auto add = [&](std::string id, std::string formula, std::string values, AuditStatus st, bool uncond) {
    rep.rows.push_back({std::move(id), std::move(formula), std::move(values), st, uncond});
  };
  const double tau = e.tolerance;
  const RealInterval w = e.w_lower, wh = e.what_proxy;
  const std::string hz = " H_max=" + std::to_string(e.h_max) + " k0=" + std::to_string(e.k0);

  // monotonicity and Dirichlet
  if (e.has_w && e.has_what) {
    bool ok = w.hi >= n - tau && w.hi + tau >= wh.lo;
    add("wmono", "w_n >= what_n >= n", "w_lower=" + fmt(w) + " what_proxy=" + fmt(wh) + hz,
        ok ? AuditStatus::Consistent : AuditStatus::Indeterminate, false);
  } else {
    add("wmono", "w_n >= what_n >= n", "insufficient records" + hz, AuditStatus::Indeterminate, false);
  }

  if (in.algebraic_degree) {
    int d = *in.algebraic_degree;
    double target = std::min(d - 1, n);
    AuditStatus st = AuditStatus::Indeterminate;
    // a running max overshoots at small heights, so only a value just under the limit counts
    if (e.has_w && w.hi <= target + 1e-12 && w.lo >= target - 0.5) st = AuditStatus::Consistent;
    add("alg", "w_n = min{d-1, n} for algebraic zeta of degree d",
        "d=" + std::to_string(d) + " target=" + fmt(target) + " w_lower=" + (e.has_w ? fmt(w) : "n/a") + hz,
        st, false);
  }

  auto upper = [&](const std::string& id, const std::string& formula, double bound) {
    if (!e.has_what) {
      add(id, formula, "no proxy" + hz, AuditStatus::Indeterminate, true);
      return;
    }
    AuditStatus st = judge_upper(wh, bound, tau);
    if (st == AuditStatus::Violated) rep.violation = true;
    add(id, formula, "what_proxy=" + fmt(wh) + " bound=" + fmt(bound) + " tol=" + fmt(tau) + hz, st, true);
  };

  upper("neu", "what_n <= theta_n", theta(n));
  upper("upbo", "what_n <= 2n-1", 2.0 * n - 1);
  if (n >= 2) upper("buschlei", "what_n <= n - 1/2 + sqrt(n^2 - 2n + 5/4)", buschlei_bound(n));
  if (n == 2) upper("najo", "what_2 <= (3+sqrt5)/2", (3 + std::sqrt(5.0)) / 2);
  if (n == 3) upper("schleibu", "what_3 <= 3+sqrt2", 3 + std::sqrt(2.0));
  if (n >= 2) upper("frwe", "what_n <= max{2n-2, w(n)}", frwe_bound(n));

  // conditional rows
  const bool lemur_gate = in.psi && in.psi->phi_nonzero >= in.threshold;
  if (n >= 4 && n % 2 == 0) {
    std::string cond = "phi_nonzero=" + std::to_string(in.psi ? in.psi->phi_nonzero : 0) +
                       " threshold=" + std::to_string(in.threshold);
    if (!lemur_gate || !e.has_what)
      add("wehave", "what_n <= 2n-2 (lemur conditions infinitely often)", cond + hz, AuditStatus::NotApplicable, false);
    else
      add("wehave", "what_n <= 2n-2 (lemur conditions infinitely often)",
          cond + " what_proxy=" + fmt(wh) + " bound=" + fmt(2.0 * n - 2) + hz,
          soften(judge_upper(wh, 2.0 * n - 2, tau)), false);
  }

  if (n % 2 == 0 && e.has_w && e.has_what) {
    double m = 1.5 * n - 1;
    if (lemur_gate && wh.lo > m) {
      RealInterval lhs = w / wh;
      RealInterval rhs = RealInterval::exact(2) * (wh - RealInterval::exact(n - 1)) / RealInterval::exact(n);
      add("derive", "w/what >= 2(what-n+1)/n if what > 3n/2-1",
          "lhs=" + fmt(lhs) + " rhs=" + fmt(rhs) + hz,
          lhs.hi >= rhs.lo ? AuditStatus::Consistent : AuditStatus::Indeterminate, false);
    } else {
      add("derive", "w/what >= 2(what-n+1)/n if what > 3n/2-1",
          "what_proxy=" + fmt(wh) + " m=" + fmt(m) + hz, AuditStatus::NotApplicable, false);
    }
  }

  bool burt = false;
  std::string burt_values = "no degree n-1 estimate";
  if (in.lower && in.lower->has_w && e.has_w) {
    burt = w.lo > in.lower->w_lower.hi;
    burt_values = "w_n=" + fmt(w) + " w_{n-1}=" + fmt(in.lower->w_lower);
  }
  if (!burt || !e.has_what) {
    add("rhs", "what_n <= sigma_n if w_n > w_{n-1}", burt_values + hz, AuditStatus::NotApplicable, false);
  } else {
    add("rhs", "what_n <= sigma_n if w_n > w_{n-1}",
        burt_values + " what_proxy=" + fmt(wh) + " bound=" + fmt(sigma(n)) + hz,
        soften(judge_upper(wh, sigma(n), tau)), false);
  }

  if (e.has_w && e.has_what) {
    if (w.lo <= n && w.hi >= n && wh.lo <= n && wh.hi >= n) {
      add("schs", "(w/what)^n >= w - what + 1", "equality branch w = what = n" + hz, AuditStatus::Consistent, false);
    } else if (wh.lo <= 0) {
      add("schs", "(w/what)^n >= w - what + 1", "what_proxy=" + fmt(wh) + " not positive" + hz,
          AuditStatus::Indeterminate, false);
    } else {
      RealInterval ratio = w / wh, pw = RealInterval::exact(1);
      for (int i = 0; i < n; ++i) pw = pw * ratio;
      RealInterval rhs = w - wh + RealInterval::exact(1);
      add("schs", "(w/what)^n >= w - what + 1", "lhs=" + fmt(pw) + " rhs=" + fmt(rhs) + hz,
          pw.hi >= rhs.lo ? AuditStatus::Consistent : AuditStatus::Indeterminate, false);
    }

    if (wh.lo > 2.0 * n - 2) {
      RealInterval lhs = w / wh;
      RealInterval rhs = wh - RealInterval::exact(2.0 * n - 3);
      add("nichtgut", "w/what >= what - 2n + 3 if what > 2n-2", "lhs=" + fmt(lhs) + " rhs=" + fmt(rhs) + hz,
          lhs.hi >= rhs.lo ? AuditStatus::Consistent : AuditStatus::Indeterminate, false);
    } else {
      add("nichtgut", "w/what >= what - 2n + 3 if what > 2n-2", "what_proxy=" + fmt(wh) + hz,
          AuditStatus::NotApplicable, false);
    }

    if (burt && w.lo <= 0) {
      add("puschel", "what <= n + (n-1) what/w if w_n > w_{n-1}", "w_lower=" + fmt(w) + " not positive" + hz,
          AuditStatus::Indeterminate, false);
    } else if (burt) {
      RealInterval rhs = RealInterval::exact(n) + RealInterval::exact(n - 1) * wh / w;
      add("puschel", "what <= n + (n-1) what/w if w_n > w_{n-1}",
          "lhs=" + fmt(wh) + " rhs=" + fmt(rhs) + hz,
          wh.lo <= rhs.hi ? AuditStatus::Consistent : AuditStatus::Indeterminate, false);
    } else {
      add("puschel", "what <= n + (n-1) what/w if w_n > w_{n-1}", burt_values + hz,
          AuditStatus::NotApplicable, false);
    }
  }

  if (in.lower && in.lower->has_w && e.has_what && n >= 2) {
    RealInterval mn = min(in.lower->w_lower, wh);
    add("mundn", "min{w_{n-1}, what_n} <= 2n-2",
        "min=" + fmt(mn) + " bound=" + fmt(2.0 * n - 2) + hz, soften(judge_upper(mn, 2.0 * n - 2, tau)), false);
  }
  return rep;
}

}  // namespace dioph
