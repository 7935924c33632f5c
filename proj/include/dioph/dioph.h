#ifndef DIOPH_DIOPH_H
#define DIOPH_DIOPH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DIOPH_API __declspec(dllexport)
#else
#define DIOPH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct dioph_number dioph_number;
typedef struct dioph_sequence dioph_sequence;

typedef enum dioph_status {
  DIOPH_OK = 0,
  DIOPH_INVALID_ARGUMENT = 1,
  DIOPH_INVALID_DESCRIPTOR = 2,
  DIOPH_PRECISION_EXHAUSTED = 3,
  DIOPH_UNSUPPORTED = 4,
  DIOPH_BUDGET_EXCEEDED = 5,
  DIOPH_ODD_N = 6,
  DIOPH_INDEX_OUT_OF_RANGE = 7,
  DIOPH_DEPENDENT_INPUT = 8,
  DIOPH_EMPTY_WINDOW = 9,
  DIOPH_NO_CERTIFIED_SAMPLES = 10,
  DIOPH_BRACKET_FAILURE = 11,
  DIOPH_DOMAIN_ERROR = 12,
  DIOPH_INTERNAL = 13
} dioph_status;

DIOPH_API const char* dioph_status_string(dioph_status status);
/* Message of the last failing call on this thread; empty when none. */
DIOPH_API const char* dioph_last_error(void);
/* Every char** output is owned by the caller and released here. */
DIOPH_API void dioph_string_free(char* s);

/* numbers */
DIOPH_API dioph_status dioph_number_from_json(const char* json, dioph_number** out);
DIOPH_API dioph_status dioph_number_preset(const char* name, dioph_number** out);
/* Comma-separated preset names. */
DIOPH_API dioph_status dioph_preset_names(char** out);
DIOPH_API dioph_status dioph_number_normalized(const dioph_number* num, dioph_number** out);
DIOPH_API dioph_status dioph_number_describe(const dioph_number* num, char** json_out);
DIOPH_API void dioph_number_free(dioph_number* num);

DIOPH_API dioph_status dioph_refine(const dioph_number* num, unsigned long bits, char** lo,
                                    char** hi);
DIOPH_API dioph_status dioph_eval_at(const int64_t* coeffs, size_t len, const dioph_number* num,
                                     unsigned long bits, char** lo, char** hi);
DIOPH_API dioph_status dioph_is_zero_at(const int64_t* coeffs, size_t len,
                                        const dioph_number* num, int* out);
/* *out: -1 for |P| < |Q|, 1 for |P| > |Q|, 0 for certified equality. */
DIOPH_API dioph_status dioph_compare_abs(const int64_t* p, size_t plen, const int64_t* q,
                                         size_t qlen, const dioph_number* num,
                                         unsigned long cap, int* out);

/* best approximation */
typedef void (*dioph_progress_fn)(int64_t height, void* user);

typedef struct dioph_best_approx_options {
  unsigned long cap;  /* 0 selects the default */
  unsigned jobs;      /* 0 or 1: single thread */
  int oracle;         /* nonzero: unpruned enumeration */
  dioph_progress_fn progress;
  void* progress_user;
} dioph_best_approx_options;

DIOPH_API dioph_status dioph_best_approx(const dioph_number* num, int n, int64_t h_max,
                                         const dioph_best_approx_options* options,
                                         dioph_sequence** out);
DIOPH_API void dioph_sequence_free(dioph_sequence* seq);
DIOPH_API size_t dioph_sequence_size(const dioph_sequence* seq);
DIOPH_API size_t dioph_sequence_note_count(const dioph_sequence* seq);
DIOPH_API dioph_status dioph_sequence_jsonl(const dioph_sequence* seq, char** out);
DIOPH_API dioph_status dioph_sequence_csv(const dioph_sequence* seq, char** out);

/* closed forms */
DIOPH_API double dioph_theta(int n);
DIOPH_API double dioph_sigma(int n);
DIOPH_API dioph_status dioph_dbound(int n, double t, double* out);
DIOPH_API dioph_status dioph_ebound(int n, double t, double* out);
DIOPH_API dioph_status dioph_wroot(int n, double tol, double* out);
DIOPH_API dioph_status dioph_bounds_csv(int n_lo, int n_hi, const double* ts, size_t nts,
                                        char** out);

/* span conditions; k_hi == 0 selects the last admissible k */
DIOPH_API dioph_status dioph_span_scan(const dioph_sequence* seq, size_t k_lo, size_t k_hi,
                                       size_t threshold, char** csv, char** json);
/* h holds 3n+3 coefficients: three constant-first blocks of length n+1. */
DIOPH_API dioph_status dioph_lambda_det(int n, const int64_t* h, size_t len, char** json);
DIOPH_API dioph_status dioph_lambda_det_sequence(const dioph_sequence* seq, size_t k,
                                                 char** json);

/* parametric geometry; q bounds are rational strings such as "0", "25/2" */
DIOPH_API dioph_status dioph_ss_graph(const dioph_number* num, int m, const char* q_min,
                                      const char* q_max, unsigned steps, int64_t h_pool,
                                      unsigned jobs, char** csv, char** manifest);

/* exponents */
DIOPH_API dioph_status dioph_exponents(const dioph_sequence* seq, size_t k0, char** json);
/* lower may be NULL; *violation is set when an unconditional bound fails. */
DIOPH_API dioph_status dioph_audit(const dioph_sequence* seq, const dioph_sequence* lower,
                                   size_t k_lo, size_t k_hi, size_t threshold, size_t k0,
                                   char** json, char** text, int* violation);

DIOPH_API dioph_status dioph_gelfond(int n, int64_t h_max, uint64_t samples, uint64_t seed,
                                     char** json);

#ifdef __cplusplus
}
#endif

#endif
