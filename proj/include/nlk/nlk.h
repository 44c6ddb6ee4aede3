/* Copyright 2026 The nonlocal-kit Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of nonlocal-kit. Objects are opaque handles released with the
 * matching _free function; every fallible call returns an nlk_status and
 * leaves a message for nlk_last_error() on the calling thread. Points are
 * arrays of n doubles, n being the dimension of the field involved.
 */
#ifndef NLK_NLK_H_
#define NLK_NLK_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NLK_API __declspec(dllexport)
#else
#define NLK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nlk_status {
  NLK_OK = 0,
  NLK_INVALID_ARGUMENT = 1,
  NLK_DOMAIN = 2,
  NLK_PRECONDITION = 3,
  NLK_NOT_IN_UK = 4,
  NLK_TAIL_DIVERGENT = 5,
  NLK_UNSUPPORTED_ORDER = 6,
  NLK_EVALUATION = 7,
  NLK_ILL_CONDITIONED = 8,
  NLK_GRID_TOO_COARSE = 9,
  NLK_SAMPLER_DEGENERATE = 10,
  NLK_CHECK_FAILED = 11,
  NLK_INTERNAL = 99
} nlk_status;

typedef struct nlk_params {
  int n;
  double s;
  int k;
  /* Nonzero multiplies the operator by its normalization constant. */
  int normalized;
} nlk_params;

typedef struct nlk_quadrature {
  double rel_tol;
  double abs_tol;
  int max_subdivisions;
  double split_radius;
  double tail_cut;
} nlk_quadrature;

typedef struct nlk_estimate {
  double value;
  double error;
  int converged;
} nlk_estimate;

typedef struct nlk_field nlk_field;
typedef struct nlk_solution nlk_solution;

NLK_API const char* nlk_version(void);
/* Message of the last failure on this thread; empty after a success. */
NLK_API const char* nlk_last_error(void);
NLK_API const char* nlk_status_name(nlk_status status);
NLK_API nlk_quadrature nlk_quadrature_default(void);
/* Worker threads used by grid evaluations; must be >= 1. */
NLK_API nlk_status nlk_set_threads(int threads);

/* Builds a field from a JSON function spec such as
 * {"type": "monomial", "exponents": [2]}. */
NLK_API nlk_status nlk_field_from_json(const char* spec, int n, double s, nlk_field** out);
NLK_API void nlk_field_free(nlk_field* field);
NLK_API nlk_status nlk_field_eval(const nlk_field* field, const double* x, double* out);

/* A null quad means nlk_quadrature_default(). */
NLK_API nlk_status nlk_classical(const nlk_field* u, const double* x, const nlk_params* p, const nlk_quadrature* quad,
                                 nlk_estimate* out);
NLK_API nlk_status nlk_divergent(const nlk_field* u, const double* x, const nlk_params* p, const nlk_quadrature* quad,
                                 nlk_estimate* out);
NLK_API nlk_status nlk_tail_integral(const nlk_field* u, double R, const nlk_params* p, const nlk_quadrature* quad,
                                     nlk_estimate* out);
NLK_API nlk_status nlk_count_Nk(int n, int k, uint64_t* out);

/* Solves the Dirichlet problem on B_r with source f and exterior datum g.
 * divergent = 0 requires g in the classical class. */
NLK_API nlk_status nlk_solve(double r, const nlk_field* f, const nlk_field* g, int divergent, const nlk_params* p,
                             const nlk_quadrature* quad, nlk_solution** out);
NLK_API nlk_status nlk_solution_eval(const nlk_solution* sol, const double* x, nlk_estimate* out);
NLK_API void nlk_solution_free(nlk_solution* sol);

/* Runs a tool subcommand on a JSON config, writing artifacts into out_dir.
 * On success *summary (if non-null) receives a JSON string to be released
 * with nlk_string_free. */
NLK_API nlk_status nlk_run_command(const char* command, const char* config_json, const char* out_dir,
                                   char** summary);

typedef void (*nlk_criterion_callback)(int id, int passed, int gating, const char* line, void* user);

/* Runs the acceptance criteria listed in ids (all when count is 0). Returns
 * NLK_CHECK_FAILED when a gating criterion fails. */
NLK_API nlk_status nlk_selftest(const int* ids, size_t count, nlk_criterion_callback callback, void* user,
                                char** summary);
NLK_API void nlk_string_free(char* str);

#ifdef __cplusplus
}
#endif

#endif /* NLK_NLK_H_ */
