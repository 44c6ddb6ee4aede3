/* Copyright 2026 The nonlocal-kit Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Exercises the C interface from plain C.
 */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "nlk/nlk.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

static void on_result(int id, int passed, int gating, const char* line, void* user) {
  (void)gating;
  (void)line;
  int* seen = (int*)user;
  if (id == 10 && passed) *seen = 1;
}

int main(void) {
  EXPECT(strlen(nlk_version()) > 0);
  EXPECT(strcmp(nlk_status_name(NLK_NOT_IN_UK), "not-in-Uk") == 0);
  EXPECT(strcmp(nlk_status_name(NLK_CHECK_FAILED), "check-failed") == 0);

  nlk_field* u = NULL;
  EXPECT(nlk_field_from_json("{\"type\": \"monomial\", \"exponents\": [2]}", 1, 0.5, &u) == NLK_OK);
  double x[1] = {0.3};
  double v = 0.0;
  EXPECT(nlk_field_eval(u, x, &v) == NLK_OK && fabs(v - 0.09) < 1e-15);

  nlk_params p = {1, 0.5, 2, 0};
  nlk_estimate e;
  EXPECT(nlk_divergent(u, x, &p, NULL, &e) == NLK_OK);
  EXPECT(fabs(e.value + 4.0) < 1e-8 && e.converged);
  EXPECT(nlk_classical(u, x, &p, NULL, &e) == NLK_TAIL_DIVERGENT);
  EXPECT(strlen(nlk_last_error()) > 0);

  nlk_params p1 = {1, 0.5, 1, 0};
  EXPECT(nlk_divergent(u, x, &p1, NULL, &e) == NLK_NOT_IN_UK);
  EXPECT(strstr(nlk_last_error(), "tail growth condition") != NULL);

  nlk_quadrature q = nlk_quadrature_default();
  EXPECT(nlk_tail_integral(u, 4.0, &p, &q, &e) == NLK_OK && fabs(e.value - 0.5) < 1e-8);
  q.rel_tol = -1.0;
  EXPECT(nlk_tail_integral(u, 4.0, &p, &q, &e) == NLK_INVALID_ARGUMENT);

  uint64_t nk = 0;
  EXPECT(nlk_count_Nk(3, 2, &nk) == NLK_OK && nk == 4);

  nlk_field* zero = NULL;
  nlk_field* g = NULL;
  EXPECT(nlk_field_from_json("{\"type\": \"zero\"}", 1, 0.5, &zero) == NLK_OK);
  EXPECT(nlk_field_from_json("{\"type\": \"annulus-indicator\", \"inner\": 1, \"outer\": 2}", 1, 0.5, &g) == NLK_OK);
  nlk_params p0 = {1, 0.5, 0, 0};
  nlk_solution* sol = NULL;
  EXPECT(nlk_solve(1.0, zero, g, 0, &p0, NULL, &sol) == NLK_OK);
  EXPECT(nlk_solution_eval(sol, x, &e) == NLK_OK && fabs(e.value - 0.67951016400738643) < 1e-9);
  nlk_solution_free(sol);

  EXPECT(nlk_field_from_json("{\"type\": \"nope\"}", 1, 0.5, &zero) == NLK_INVALID_ARGUMENT);
  EXPECT(nlk_field_from_json("{not json", 1, 0.5, &zero) == NLK_INVALID_ARGUMENT);
  EXPECT(nlk_field_eval(NULL, x, &v) == NLK_INVALID_ARGUMENT);
  EXPECT(nlk_set_threads(0) == NLK_INVALID_ARGUMENT);
  EXPECT(nlk_set_threads(2) == NLK_OK);

  char* summary = NULL;
  EXPECT(nlk_run_command("multiplicity", "{\"params\": {\"n\": 1, \"s\": 0.5, \"k\": 1}, \"grid\": {\"size\": 5}}",
                         "capi_out", &summary) == NLK_OK);
  EXPECT(summary != NULL && strstr(summary, "\"rank\": 1") != NULL);
  nlk_string_free(summary);
  EXPECT(nlk_run_command("eval", "{\"bogus\": 1}", "capi_out", NULL) == NLK_INVALID_ARGUMENT);

  int seen = 0;
  int ids[1] = {10};
  EXPECT(nlk_selftest(ids, 1, on_result, &seen, NULL) == NLK_OK && seen);

  nlk_field_free(u);
  nlk_field_free(g);
  nlk_field_free(NULL);
  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  else printf("C interface: all checks passed\n");
  return failures ? 1 : 0;
}
