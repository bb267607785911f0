/* Exercises the shared library through its C header only. */
#include "normconc/normconc.h"

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define CHECK(cond)                                          \
  do {                                                       \
    if (!(cond)) {                                           \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                            \
    }                                                        \
  } while (0)

int main(void) {
  nc_context* ctx = NULL;
  char* out = NULL;

  CHECK(nc_version() != NULL && strlen(nc_version()) > 0);
  CHECK(strcmp(nc_status_name(NC_OK), "ok") == 0);
  CHECK(nc_context_create(7, NULL) == NC_INVALID_ARGUMENT);
  CHECK(nc_context_create(7, &ctx) == NC_OK && ctx != NULL);

  CHECK(nc_run(ctx, "bound",
               "{\"model\":{\"type\":\"gaussian\",\"mean\":[0,0],\"covariance\":[[1,0],[0,1]]},"
               "\"set\":{\"type\":\"ball\",\"center\":[3,0],\"radius\":1}}",
               &out) == NC_OK);
  CHECK(out != NULL && strstr(out, "\"value\": 0.1353352832366127") != NULL);
  nc_text_free(out);
  out = NULL;

  CHECK(nc_run(ctx, "allocate",
               "{\"gradient\":[1,2],\"margins\":[1,1],\"diameters\":[1,1],\"total_budget\":30}", &out) == NC_OK);
  CHECK(out != NULL && strstr(out, "10,\n    20") != NULL);
  nc_text_free(out);
  out = NULL;

  /* Errors leave *out untouched and set a message. */
  CHECK(nc_run(ctx, "bound", "{not json", &out) == NC_PARSE_ERROR);
  CHECK(out == NULL);
  CHECK(strlen(nc_last_error(ctx)) > 0);
  CHECK(nc_run(ctx, "bound", "{\"set\":{}}", &out) == NC_PARSE_ERROR);
  CHECK(nc_run(ctx, "frobnicate", "{}", &out) == NC_INVALID_ARGUMENT);
  CHECK(nc_run(ctx, "allocate",
               "{\"gradient\":[1,2],\"margins\":[1,1],\"diameters\":[1,1],\"total_budget\":1}", &out) ==
        NC_INFEASIBLE);
  CHECK(nc_run(ctx, "bound",
               "{\"model\":{\"type\":\"psi\",\"psi\":{\"type\":\"euclidean\"},\"mean\":[0,0,0]},"
               "\"set\":{\"type\":\"ball\",\"center\":[3,0],\"radius\":1}}",
               &out) == NC_DIMENSION_MISMATCH);
  CHECK(nc_run(ctx, "bound", "{}", NULL) == NC_INVALID_ARGUMENT);

  double mcd = 0.0, hs = 0.0;
  CHECK(nc_quadratic_example(ctx, 64, 0.125, &mcd, &hs) == NC_OK);
  CHECK(fabs(mcd - (-8.0 * pow(8.0 / 6.0 - 0.125 / 8.0, 2))) < 1e-12);
  CHECK(fabs(hs - (-0.5 * 49.0)) < 1e-12);
  CHECK(nc_quadratic_example(ctx, 0, 0.125, &mcd, &hs) == NC_INVALID_ARGUMENT);

  /* The context seed applies when the request has none. */
  const char* verify =
      "{\"sampler\":{\"type\":\"product_uniform\",\"lower\":[0],\"upper\":[1]},\"samples\":1000,"
      "\"model\":{\"type\":\"cuboid\",\"means\":[0.5],\"interval_lengths\":[1]},"
      "\"set\":{\"type\":\"halfspace\",\"point\":[0.9],\"normal\":[-1]}}";
  char* a = NULL;
  char* b = NULL;
  nc_context* other = NULL;
  CHECK(nc_context_create(7, &other) == NC_OK);
  CHECK(nc_run(ctx, "verify", verify, &a) == NC_OK);
  CHECK(nc_run(other, "verify", verify, &b) == NC_OK);
  CHECK(a && b && strcmp(a, b) == 0);
  nc_text_free(a);
  nc_text_free(b);

  nc_context_destroy(other);
  nc_context_destroy(ctx);
  nc_context_destroy(NULL);
  nc_text_free(NULL);

  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  puts("C API: all checks passed");
  return 0;
}
