#ifndef BASISFORGE_H
#define BASISFORGE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define BF_API __declspec(dllexport)
#else
#define BF_API __attribute__((visibility("default")))
#endif

typedef enum bf_status {
  BF_OK = 0,
  BF_E_INVALID = 1,      /* malformed input or violated precondition */
  BF_E_CAP = 2,          /* enumeration cap exceeded */
  BF_E_UNATTAINABLE = 3, /* requested multiplicity cannot be reached */
  BF_E_HYPOTHESIS = 4,   /* structural hypothesis does not hold */
  BF_E_INTERNAL = 5
} bf_status;

typedef struct bf_context bf_context;
typedef struct bf_basis bf_basis;
typedef struct bf_certificate bf_certificate;

BF_API bf_context* bf_context_new(void);
BF_API void bf_context_free(bf_context* ctx);
BF_API bf_status bf_context_set_cap(bf_context* ctx, uint64_t cap);
BF_API bf_status bf_context_set_threads(bf_context* ctx, unsigned threads);
/* Message of the last failed call on this context; never NULL. */
BF_API const char* bf_last_error(const bf_context* ctx);
BF_API const char* bf_status_string(bf_status status);

/* Strings returned through char** are owned by the caller. */
BF_API void bf_string_free(char* s);

/* request: {"family": "pcp", "p": 5, "s": 1, "n": 1, "k": 2, ...} */
BF_API bf_status bf_construct(bf_context* ctx, const char* request_json, bf_basis** out);
BF_API bf_status bf_basis_from_json(bf_context* ctx, const char* json, bf_basis** out);
BF_API bf_status bf_basis_to_json(bf_context* ctx, const bf_basis* basis, char** out);
BF_API size_t bf_basis_size(const bf_basis* basis);
BF_API void bf_basis_free(bf_basis* basis);

/* kind: "add" or "diff". */
BF_API bf_status bf_verify(bf_context* ctx, const bf_basis* basis, uint64_t g, const char* kind,
                           bf_certificate** out);
BF_API int bf_certificate_passed(const bf_certificate* cert);
BF_API bf_status bf_certificate_to_json(bf_context* ctx, const bf_certificate* cert, char** out);
BF_API void bf_certificate_free(bf_certificate* cert);

/* gens_json: array of coordinate arrays. */
BF_API bf_status bf_rds_check(bf_context* ctx, const bf_basis* basis, const char* gens_json, uint64_t lambda,
                              int* passed, char** out_json);

BF_API bf_status bf_classify(bf_context* ctx, const char* group, char** out_json);
/* CSV with header, one row per n in [1, max_n]. */
BF_API bf_status bf_census(bf_context* ctx, unsigned max_n, char** out_csv);
/* format: "json" or "csv". */
BF_API bf_status bf_bounds(bf_context* ctx, const char* group, uint64_t g, const char* kind, const char* format,
                           char** out);
BF_API bf_status bf_search_min(bf_context* ctx, const char* group, uint64_t g, const char* kind, char** out_json);
/* theorem: "weak" or "adm". With materialize != 0 the payload carries the basis and its certificate. */
BF_API bf_status bf_plan(bf_context* ctx, const char* group, const char* theorem, unsigned n, int materialize,
                         int* passed, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
