#ifndef TOTREP_TOTREP_H
#define TOTREP_TOTREP_H

/*
 * C interface to the totrep library.
 *
 * Every entry point takes a context (budgets) and writes a newly allocated
 * result to *out, also on failure, so the message can be read back. Results
 * carry canonical JSON text (JSONL for searches); free them with
 * totrep_result_free. Integers cross the boundary as decimal strings, or as
 * products of powers such as "2^8*3^3*3456001^2".
 */

#include <stdint.h>

#if defined(TOTREP_BUILDING_LIBRARY)
#define TOTREP_API __attribute__((visibility("default")))
#else
#define TOTREP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum totrep_status {
  TOTREP_OK = 0,
  TOTREP_INVALID_ARGUMENT,
  TOTREP_FACTOR_BOUND_EXCEEDED,
  TOTREP_NOT_PRIME,
  TOTREP_NOT_A_SQUARE,
  TOTREP_PARITY_VIOLATION,
  TOTREP_SEARCH_EXHAUSTED,
  TOTREP_GCD_VIOLATION,
  TOTREP_SIEVE_BUDGET_EXCEEDED,
  TOTREP_NOT_APPLICABLE,
  TOTREP_PERIOD_BUDGET_EXCEEDED,
  TOTREP_MODULUS_TOO_LARGE,
  TOTREP_INVARIANT_BROKEN,
  TOTREP_UNSUPPORTED_QUADRUPLE,
  TOTREP_CONSTRUCTION_FAILED,
  TOTREP_NO_SUCH_K,
  /* Malformed JSON or an unexpected exception. */
  TOTREP_INTERNAL
} totrep_status;

typedef struct totrep_context totrep_context;
typedef struct totrep_result totrep_result;

TOTREP_API const char* totrep_version(void);
TOTREP_API const char* totrep_status_name(totrep_status status);

TOTREP_API totrep_context* totrep_context_new(void);
TOTREP_API void totrep_context_free(totrep_context* ctx);
/* Keys: trial_bound, rho_iterations, mr_rounds, prime_candidates,
 * sieve_limit, pell_period, max_strict_prime, descent_nodes, max_boost,
 * seed. Values are unsigned decimal. */
TOTREP_API totrep_status totrep_context_set(totrep_context* ctx, const char* key, const char* value);

TOTREP_API void totrep_result_free(totrep_result* res);
TOTREP_API totrep_status totrep_result_status(const totrep_result* res);
TOTREP_API const char* totrep_result_text(const totrep_result* res);
TOTREP_API const char* totrep_result_message(const totrep_result* res);
/* Verified flag for witnesses and verifiers, "found at least one hit" for
 * searches, 1 for anything else that succeeded. */
TOTREP_API int totrep_result_flag(const totrep_result* res);

/* t_override <= 0 means none. */
TOTREP_API totrep_status totrep_thm1(totrep_context* ctx, const char* q, int64_t b, int64_t t_override,
                                     int compact, totrep_result** out);
/* t_override may be NULL. */
TOTREP_API totrep_status totrep_thm2(totrep_context* ctx, const char* q, const char* k, const char* l,
                                     const char* t_override, totrep_result** out);
TOTREP_API totrep_status totrep_general(totrep_context* ctx, const char* q, int64_t a, int64_t b, int64_t r,
                                        int64_t s, totrep_result** out);

TOTREP_API totrep_status totrep_classify(totrep_context* ctx, int64_t a, int64_t b, int64_t r, int64_t s,
                                         totrep_result** out);
/* Scans 1 <= m, n <= bound for (phi(m^r))^a / (phi(n^s))^b = target. The
 * flag is 1 when a representation was found. */
TOTREP_API totrep_status totrep_refute(totrep_context* ctx, int64_t a, int64_t b, int64_t r, int64_t s,
                                       const char* target, uint64_t bound, totrep_result** out);

/* The flag holds the outcome of the exact recomputation. */
TOTREP_API totrep_status totrep_verify_rep(totrep_context* ctx, const char* m, const char* n, int64_t a, int64_t b,
                                           int64_t r, int64_t s, const char* q, totrep_result** out);
TOTREP_API totrep_status totrep_verify_thm2(totrep_context* ctx, const char* m, const char* n, const char* k,
                                            const char* l, const char* q, totrep_result** out);
TOTREP_API totrep_status totrep_verify_document(totrep_context* ctx, const char* json, totrep_result** out);

TOTREP_API totrep_status totrep_pell(totrep_context* ctx, const char* d, totrep_result** out);
TOTREP_API totrep_status totrep_factor(totrep_context* ctx, const char* n, totrep_result** out);

/* Called after every completed block with a checkpoint JSON object. */
typedef void (*totrep_checkpoint_fn)(const char* checkpoint_json, void* user);

/* task_json: {"k","l","t","target"} or {"pow2_w"}, plus optional "m_limit",
 * "n_limit", "threads", "block". Missing limits default to 10^4 and are
 * flagged in the report. checkpoint_json may be NULL; on_checkpoint may be
 * NULL. */
TOTREP_API totrep_status totrep_search(totrep_context* ctx, const char* task_json, const char* checkpoint_json,
                                       totrep_checkpoint_fn on_checkpoint, void* user, totrep_result** out);

#ifdef __cplusplus
}
#endif

#endif
