#include "dioph/dioph.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "dioph/bestapprox.hpp"
#include "dioph/error.hpp"
#include "dioph/exponents.hpp"
#include "dioph/number.hpp"
#include "dioph/pgn.hpp"
#include "dioph/polynomial.hpp"
#include "dioph/reports.hpp"
#include "dioph/spanconds.hpp"

struct dioph_number {
  dioph::Number value;
};

struct dioph_sequence {
  dioph::BestApproxSequence value;
};

namespace {

thread_local std::string g_last_error;

dioph_status map_code(dioph::ErrorCode c) {
  using dioph::ErrorCode;
  switch (c) {
    case ErrorCode::InvalidArgument: return DIOPH_INVALID_ARGUMENT;
    case ErrorCode::InvalidDescriptor: return DIOPH_INVALID_DESCRIPTOR;
    case ErrorCode::PrecisionExhausted: return DIOPH_PRECISION_EXHAUSTED;
    case ErrorCode::Unsupported: return DIOPH_UNSUPPORTED;
    case ErrorCode::BudgetExceeded: return DIOPH_BUDGET_EXCEEDED;
    case ErrorCode::OddN: return DIOPH_ODD_N;
    case ErrorCode::IndexOutOfRange: return DIOPH_INDEX_OUT_OF_RANGE;
    case ErrorCode::DependentInput: return DIOPH_DEPENDENT_INPUT;
    case ErrorCode::EmptyWindow: return DIOPH_EMPTY_WINDOW;
    case ErrorCode::NoCertifiedSamples: return DIOPH_NO_CERTIFIED_SAMPLES;
    case ErrorCode::BracketFailure: return DIOPH_BRACKET_FAILURE;
    case ErrorCode::DomainError: return DIOPH_DOMAIN_ERROR;
  }
  return DIOPH_INTERNAL;
}

template <class F>
dioph_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return DIOPH_OK;
  } catch (const dioph::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DIOPH_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return DIOPH_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void put(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

void need(const void* p, const char* what) {
  if (!p) dioph::fail(dioph::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

dioph::IntegerPolynomial poly_of(const int64_t* c, size_t len) {
  if (len && !c) dioph::fail(dioph::ErrorCode::InvalidArgument, "coefficients are null");
  return dioph::IntegerPolynomial::from_int64(std::span<const std::int64_t>(c, len));
}

std::optional<int> algebraic_degree(const dioph::NumberDescriptor& z) {
  if (z.exact_value()) return std::nullopt;
  if (const auto* p = z.defining_polynomial()) return p->degree();
  return std::nullopt;
}

}  // namespace

extern "C" {

const char* dioph_status_string(dioph_status status) {
  switch (status) {
    case DIOPH_OK: return "ok";
    case DIOPH_INVALID_ARGUMENT: return "invalid argument";
    case DIOPH_INVALID_DESCRIPTOR: return "invalid number descriptor";
    case DIOPH_PRECISION_EXHAUSTED: return "precision exhausted";
    case DIOPH_UNSUPPORTED: return "unsupported";
    case DIOPH_BUDGET_EXCEEDED: return "budget exceeded";
    case DIOPH_ODD_N: return "n must be even";
    case DIOPH_INDEX_OUT_OF_RANGE: return "index out of range";
    case DIOPH_DEPENDENT_INPUT: return "dependent input";
    case DIOPH_EMPTY_WINDOW: return "empty window";
    case DIOPH_NO_CERTIFIED_SAMPLES: return "no certified samples";
    case DIOPH_BRACKET_FAILURE: return "bracket failure";
    case DIOPH_DOMAIN_ERROR: return "domain error";
    case DIOPH_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* dioph_last_error(void) { return g_last_error.c_str(); }

void dioph_string_free(char* s) { std::free(s); }

dioph_status dioph_number_from_json(const char* json, dioph_number** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new dioph_number{dioph::NumberDescriptor::from_json(json)};
  });
}

dioph_status dioph_number_preset(const char* name, dioph_number** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = new dioph_number{dioph::preset_number(name)};
  });
}

dioph_status dioph_preset_names(char** out) {
  return guarded([&] {
    need(out, "out");
    std::string s;
    for (const auto& n : dioph::preset_names()) s += (s.empty() ? "" : ",") + n;
    put(out, s);
  });
}

dioph_status dioph_number_normalized(const dioph_number* num, dioph_number** out) {
  return guarded([&] {
    need(num, "number");
    need(out, "out");
    *out = new dioph_number{num->value->unit_interval_normalized()};
  });
}

dioph_status dioph_number_describe(const dioph_number* num, char** json_out) {
  return guarded([&] {
    need(num, "number");
    put(json_out, num->value->to_json());
  });
}

void dioph_number_free(dioph_number* num) { delete num; }

dioph_status dioph_refine(const dioph_number* num, unsigned long bits, char** lo, char** hi) {
  return guarded([&] {
    need(num, "number");
    dioph::RationalInterval r = num->value->refine(bits);
    put(lo, r.lo.get_str());
    put(hi, r.hi.get_str());
  });
}

dioph_status dioph_eval_at(const int64_t* coeffs, size_t len, const dioph_number* num,
                           unsigned long bits, char** lo, char** hi) {
  return guarded([&] {
    need(num, "number");
    dioph::RationalInterval r = dioph::eval_at(poly_of(coeffs, len), *num->value, bits);
    put(lo, r.lo.get_str());
    put(hi, r.hi.get_str());
  });
}

dioph_status dioph_is_zero_at(const int64_t* coeffs, size_t len, const dioph_number* num,
                              int* out) {
  return guarded([&] {
    need(num, "number");
    need(out, "out");
    *out = dioph::is_zero_at(poly_of(coeffs, len), *num->value) ? 1 : 0;
  });
}

dioph_status dioph_compare_abs(const int64_t* p, size_t plen, const int64_t* q, size_t qlen,
                               const dioph_number* num, unsigned long cap, int* out) {
  return guarded([&] {
    need(num, "number");
    need(out, "out");
    auto r = dioph::compare_abs(poly_of(p, plen), poly_of(q, qlen), *num->value,
                                cap ? cap : dioph::kDefaultPrecisionCap);
    *out = r == dioph::AbsOrder::Less ? -1 : r == dioph::AbsOrder::Greater ? 1 : 0;
  });
}

dioph_status dioph_best_approx(const dioph_number* num, int n, int64_t h_max,
                               const dioph_best_approx_options* options, dioph_sequence** out) {
  return guarded([&] {
    need(num, "number");
    need(out, "out");
    dioph::BestApproxOptions o;
    bool oracle = false;
    if (options) {
      if (options->cap) o.cap = options->cap;
      o.jobs = options->jobs ? options->jobs : 1;
      oracle = options->oracle != 0;
      if (options->progress) {
        auto fn = options->progress;
        void* user = options->progress_user;
        o.progress = [fn, user](std::int64_t h) { fn(h, user); };
      }
    }
    auto seq = oracle ? dioph::oracle_best_approx(n, num->value, h_max, o)
                      : dioph::best_approx_sequence(n, num->value, h_max, o);
    *out = new dioph_sequence{std::move(seq)};
  });
}

void dioph_sequence_free(dioph_sequence* seq) { delete seq; }

size_t dioph_sequence_size(const dioph_sequence* seq) { return seq ? seq->value.size() : 0; }

size_t dioph_sequence_note_count(const dioph_sequence* seq) {
  return seq ? seq->value.notes.size() : 0;
}

dioph_status dioph_sequence_jsonl(const dioph_sequence* seq, char** out) {
  return guarded([&] {
    need(seq, "sequence");
    put(out, dioph::best_approx_jsonl(seq->value));
  });
}

dioph_status dioph_sequence_csv(const dioph_sequence* seq, char** out) {
  return guarded([&] {
    need(seq, "sequence");
    put(out, dioph::best_approx_csv(seq->value));
  });
}

double dioph_theta(int n) { return n >= 1 ? dioph::theta(n) : 0.0; }
double dioph_sigma(int n) { return n >= 1 ? dioph::sigma(n) : 0.0; }

dioph_status dioph_dbound(int n, double t, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = dioph::dbound(n, t);
    if (!dioph::bound_t_in_domain(n, t))
      dioph::fail(dioph::ErrorCode::DomainError, "t outside [ceil(3n/2)-1, 2n-1]; value still computed");
  });
}

dioph_status dioph_ebound(int n, double t, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = dioph::ebound(n, t);
    if (!dioph::bound_t_in_domain(n, t))
      dioph::fail(dioph::ErrorCode::DomainError, "t outside [ceil(3n/2)-1, 2n-1]; value still computed");
  });
}

dioph_status dioph_wroot(int n, double tol, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = dioph::wroot(n, tol > 0 ? tol : 1e-13);
  });
}

dioph_status dioph_bounds_csv(int n_lo, int n_hi, const double* ts, size_t nts, char** out) {
  return guarded([&] {
    std::vector<double> t;
    if (nts) {
      need(ts, "ts");
      t.assign(ts, ts + nts);
    }
    put(out, dioph::bounds_csv(dioph::bounds_table(n_lo, n_hi, t)));
  });
}

dioph_status dioph_span_scan(const dioph_sequence* seq, size_t k_lo, size_t k_hi,
                             size_t threshold, char** csv, char** json) {
  return guarded([&] {
    need(seq, "sequence");
    const auto& s = seq->value;
    auto psi = dioph::psi_estimate(s, k_lo, k_hi, threshold ? threshold : dioph::kDefaultPsiThreshold);
    if (csv) *csv = dup(dioph::span_scan_csv(dioph::span_scan_rows(s, psi.k_lo, psi.k_hi)));
    try {
      put(json, dioph::span_scan_json(s, psi));
    } catch (...) {
      if (csv) std::free(*csv);
      throw;
    }
  });
}

dioph_status dioph_lambda_det(int n, const int64_t* h, size_t len, char** json) {
  return guarded([&] {
    if (n < 2 || n % 2) dioph::fail(dioph::ErrorCode::OddN, "n must be even and >= 2");
    const size_t b = static_cast<size_t>(n) + 1;
    if (len != 3 * b) dioph::fail(dioph::ErrorCode::InvalidArgument, "expected 3n+3 coefficients");
    need(h, "h");
    auto t = dioph::GluedTriple::from_polys(n, poly_of(h, b), poly_of(h + b, b), poly_of(h + 2 * b, b));
    put(json, dioph::lambda_json(t, dioph::lemur_check(t)));
  });
}

dioph_status dioph_lambda_det_sequence(const dioph_sequence* seq, size_t k, char** json) {
  return guarded([&] {
    need(seq, "sequence");
    auto t = dioph::GluedTriple::from_sequence(seq->value, k);
    put(json, dioph::lambda_json(t, dioph::lemur_check(t)));
  });
}

dioph_status dioph_ss_graph(const dioph_number* num, int m, const char* q_min, const char* q_max,
                            unsigned steps, int64_t h_pool, unsigned jobs, char** csv,
                            char** manifest) {
  return guarded([&] {
    need(num, "number");
    need(q_min, "q_min");
    need(q_max, "q_max");
    auto g = dioph::ss_graph(m, num->value, dioph::parse_rational(q_min), dioph::parse_rational(q_max),
                             steps, h_pool, jobs ? jobs : 1);
    std::optional<dioph::MinkowskiReport> mk;
    try {
      mk = dioph::minkowski_check(g);
    } catch (const dioph::Error& e) {
      if (e.code() != dioph::ErrorCode::NoCertifiedSamples) throw;
    }
    std::string c = dioph::ss_graph_csv(g);
    std::string mf = dioph::ss_graph_manifest(g, mk ? &*mk : nullptr);
    put(csv, c);
    put(manifest, mf);
  });
}

dioph_status dioph_exponents(const dioph_sequence* seq, size_t k0, char** json) {
  return guarded([&] {
    need(seq, "sequence");
    auto est = dioph::estimate_exponents(seq->value, k0 ? k0 : 1);
    put(json, dioph::exponents_json(seq->value, est));
  });
}

dioph_status dioph_audit(const dioph_sequence* seq, const dioph_sequence* lower, size_t k_lo,
                         size_t k_hi, size_t threshold, size_t k0, char** json, char** text,
                         int* violation) {
  return guarded([&] {
    need(seq, "sequence");
    const auto& s = seq->value;
    dioph::AuditInputs in;
    in.est = dioph::estimate_exponents(s, k0 ? k0 : 1);
    if (lower) in.lower = dioph::estimate_exponents(lower->value, 1);
    in.threshold = threshold ? threshold : dioph::kDefaultPsiThreshold;
    if (s.size() >= 3) {
      try {
        in.psi = dioph::psi_estimate(s, k_lo, k_hi, in.threshold);
      } catch (const dioph::Error& e) {
        if (e.code() != dioph::ErrorCode::EmptyWindow) throw;
      }
    }
    in.algebraic_degree = algebraic_degree(*s.zeta);
    auto rep = dioph::audit(in);
    std::string j = dioph::audit_json(rep, in.est), t = dioph::audit_text(rep);
    put(json, j);
    put(text, t);
    if (violation) *violation = rep.violation ? 1 : 0;
  });
}

dioph_status dioph_gelfond(int n, int64_t h_max, uint64_t samples, uint64_t seed, char** json) {
  return guarded([&] {
    auto scan = dioph::gelfond_scan(n, h_max, samples, seed);
    put(json, dioph::gelfond_json(scan, seed));
  });
}

}  // extern "C"
