#ifndef NORMCONC_H
#define NORMCONC_H

/* C interface to the normconc library. Requests and reports are JSON documents
 * (see schemas/). Every call returns an nc_status; on failure the message is
 * available from nc_last_error() until the next call on the same context. */

#include <stdint.h>

#if defined(_WIN32)
#define NC_API __declspec(dllexport)
#else
#define NC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  NC_OK = 0,
  NC_INVALID_ARGUMENT = 1,
  NC_DIMENSION_MISMATCH = 2,
  NC_EMPTY_SET = 3,
  NC_INFEASIBLE = 4,
  NC_NOT_IN_SET = 5,
  NC_NO_CANDIDATE = 6,
  NC_PARSE_ERROR = 7,
  NC_INTERNAL = 8
} nc_status;

typedef struct nc_context nc_context;

NC_API const char* nc_version(void);
NC_API const char* nc_status_name(nc_status status);

/* default_seed is used by commands whose request carries no "seed". */
NC_API nc_status nc_context_create(uint64_t default_seed, nc_context** out);
NC_API void nc_context_destroy(nc_context* ctx);
NC_API const char* nc_last_error(const nc_context* ctx);

/* Runs "bound", "compare", "allocate", "verify" or "sharpness". On success *out
 * holds a NUL-terminated report owned by the caller (release with nc_text_free). */
NC_API nc_status nc_run(nc_context* ctx, const char* command, const char* request_json, char** out);
NC_API void nc_text_free(char* text);

/* Direct entry points for the two closed-form bounds on P[Q_N(X) <= theta]. */
NC_API nc_status nc_quadratic_example(nc_context* ctx, int n, double theta, double* mcd_exponent,
                                      double* halfspace_exponent);

#ifdef __cplusplus
}
#endif

#endif
