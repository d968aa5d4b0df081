/*
 * Copyright 2026 The Corrgauss Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CORRGAUSS_H_
#define CORRGAUSS_H_

/*
 * C interface to the corrgauss library: correlated Gaussian noise for
 * releasing d bounded sums under Gaussian differential privacy, plus the
 * closed-form noise analytics and the audit oracles.
 *
 * Conventions:
 *   - Every fallible call returns cg_status; CG_OK is zero. On failure
 *     cg_last_error() returns a message for the calling thread.
 *   - Objects are opaque handles created by *_create / *_load and released
 *     by the matching *_free. Free functions accept NULL.
 *   - Output arrays are caller-allocated; every array argument comes with
 *     its length, which must match exactly.
 *   - A cg_rng must not be used from two threads at once.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define CG_API __declspec(dllexport)
#elif defined(__GNUC__)
#  define CG_API __attribute__((visibility("default")))
#else
#  define CG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cg_status {
  CG_OK = 0,
  CG_ERR_INVALID_ARGUMENT = 1,
  CG_ERR_PARSE = 2,
  CG_ERR_RAGGED_ROW = 3,
  CG_ERR_OUT_OF_RANGE = 4,
  CG_ERR_EMPTY_INPUT = 5,
  CG_ERR_BAD_GROUP_INDEX = 6,
  CG_ERR_NEGATIVE_VARIANCE = 7,
  CG_ERR_NON_POSITIVE_SENSITIVITY = 8,
  CG_ERR_NON_POSITIVE_C = 9,
  CG_ERR_NON_POSITIVE_INPUT = 10,
  CG_ERR_OUT_OF_BRACKET = 11,
  CG_ERR_DIMENSION_TOO_LARGE = 12,
  CG_ERR_SINGULAR_MATRIX = 13,
  CG_ERR_INTERNAL = 100
} cg_status;

typedef enum cg_relation {
  CG_ADD_REMOVE = 0,
  CG_REPLACEMENT = 1
} cg_relation;

typedef enum cg_layout {
  CG_LAYOUT_FLAT = 0,
  CG_LAYOUT_GROUPED = 1
} cg_layout;

typedef struct cg_dataset cg_dataset;
typedef struct cg_grouped_dataset cg_grouped_dataset;
typedef struct cg_rng cg_rng;
typedef struct cg_audit_report cg_audit_report;

typedef struct cg_noise_profile {
  size_t d;
  double c;
  double mu;
  double a;
  double b;
  double per_query_variance;
  double n_variance;
} cg_noise_profile;

typedef struct cg_audit_check {
  const char* name; /* owned by the report */
  double expected;
  double observed;
  double tolerance;
  int pass;
} cg_audit_check;

typedef struct cg_audit_options {
  size_t max_d;
  size_t runs;
  uint64_t seed;
  int fast;
  unsigned workers;
} cg_audit_options;

CG_API const char* cg_version(void);
CG_API const char* cg_last_error(void);
CG_API const char* cg_status_name(cg_status status);

/* ---- datasets ---------------------------------------------------------- */

/* Dense CSV. dimension = 0 infers d from the first row. */
CG_API cg_status cg_dataset_load_csv(const char* text, size_t length,
                                     size_t dimension, cg_dataset** out);
CG_API cg_status cg_dataset_create(const double* values, size_t rows,
                                   size_t dimension, cg_dataset** out);
CG_API void cg_dataset_free(cg_dataset* dataset);
CG_API size_t cg_dataset_rows(const cg_dataset* dataset);
CG_API size_t cg_dataset_dimension(const cg_dataset* dataset);
CG_API cg_status cg_sum_queries(const cg_dataset* dataset, double* out,
                                size_t length);

/* Sparse CSV "j,v1,...,vd". groups / dimension = 0 infers them. */
CG_API cg_status cg_grouped_load_csv(const char* text, size_t length,
                                     size_t groups, size_t dimension,
                                     cg_grouped_dataset** out);
CG_API void cg_grouped_free(cg_grouped_dataset* dataset);
CG_API size_t cg_grouped_groups(const cg_grouped_dataset* dataset);
CG_API size_t cg_grouped_dimension(const cg_grouped_dataset* dataset);
/* sums: m*d row-major; counts: m. */
CG_API cg_status cg_grouped_sums(const cg_grouped_dataset* dataset,
                                 double* sums, size_t sums_length,
                                 double* counts, size_t counts_length);

/* ---- randomness -------------------------------------------------------- */

CG_API cg_status cg_rng_create(uint64_t base_seed, uint64_t stream_id,
                               cg_rng** out);
CG_API void cg_rng_free(cg_rng* rng);
CG_API cg_status cg_rng_gaussian(cg_rng* rng, double mean, double variance,
                                 double* out);

/* ---- mechanisms -------------------------------------------------------- */

CG_API cg_status cg_standard_gaussian(const double* queries, size_t d,
                                      double sensitivity, double mu,
                                      cg_rng* rng, double* out);
/* estimates has length d. */
CG_API cg_status cg_correlated_gaussian(const cg_dataset* dataset, double mu,
                                        cg_rng* rng, double* estimates,
                                        size_t d, double* n_estimate);
CG_API cg_status cg_correlated_gaussian_tunable(const cg_dataset* dataset,
                                                double mu, double c,
                                                cg_rng* rng, double* estimates,
                                                size_t d, double* n_estimate);
/* out has length d + 1. */
CG_API cg_status cg_embed_point(const double* x, size_t d, double c,
                                double* out, size_t out_length);
CG_API cg_status cg_embedded_release(const cg_dataset* dataset, double mu,
                                     double c, cg_rng* rng, double* out,
                                     size_t out_length);
CG_API cg_status cg_postprocess_h_inverse(const double* y, size_t length,
                                          double c, double* estimates,
                                          size_t d, double* n_estimate);
CG_API cg_status cg_postprocess_h(const double* estimates, size_t d,
                                  double n_estimate, double c, double* y,
                                  size_t length);
CG_API cg_status cg_known_n_release(const cg_dataset* dataset,
                                    double n_estimate, double mu, cg_rng* rng,
                                    double* out, size_t d);

/* ---- grouped ----------------------------------------------------------- */

/* estimates: m*d row-major; counts: m. */
CG_API cg_status cg_grouped_release(const cg_grouped_dataset* dataset,
                                    double mu, cg_relation relation,
                                    cg_rng* rng, double* estimates,
                                    size_t estimates_length, double* counts,
                                    size_t counts_length);
CG_API cg_status cg_grouped_standard(const cg_grouped_dataset* dataset,
                                     double mu, cg_relation relation,
                                     cg_rng* rng, double* estimates,
                                     size_t estimates_length);

/* ---- analytics --------------------------------------------------------- */

CG_API cg_status cg_noise_profile_compute(size_t d, double c, double mu,
                                          cg_noise_profile* out);
CG_API cg_status cg_optimal_c(size_t d, double* out);
/* out: (d+1)*(d+1) row-major. */
CG_API cg_status cg_covariance_matrix(size_t d, double c, double mu,
                                      double* out, size_t length);
CG_API cg_status cg_embedded_sensitivity(size_t d, double c, double* out);
CG_API cg_status cg_flat_sensitivity(size_t d, cg_relation relation,
                                     cg_layout layout, double* out);
CG_API cg_status cg_gdp_to_zcdp(double mu, double* rho);
CG_API cg_status cg_gdp_to_approx_dp(double mu, double epsilon,
                                     double* delta);
CG_API cg_status cg_calibrate_mu(double epsilon, double delta, double* mu);

/* ---- audit ------------------------------------------------------------- */

CG_API cg_status cg_brute_force_sensitivity(size_t d, double c, double* out);
CG_API cg_status cg_mahalanobis_audit(size_t d, double c, double mu,
                                      double* out);
/* Options default to {12, 200000, 42, 0, 1}. */
CG_API void cg_audit_options_default(cg_audit_options* options);
CG_API cg_status cg_audit_run_suite(const cg_audit_options* options,
                                    cg_audit_report** out);
/* embedded_c <= 0 means d^{1/4}. */
CG_API cg_status cg_audit_equivalence(const cg_dataset* dataset, double mu,
                                      size_t runs, uint64_t seed,
                                      double embedded_c, unsigned workers,
                                      cg_audit_report** out);
CG_API void cg_audit_report_free(cg_audit_report* report);
CG_API size_t cg_audit_report_size(const cg_audit_report* report);
CG_API cg_status cg_audit_report_check(const cg_audit_report* report,
                                       size_t index, cg_audit_check* out);
CG_API int cg_audit_report_passed(const cg_audit_report* report);
/* Check lines, NUL-terminated, owned by the report. */
CG_API const char* cg_audit_report_text(const cg_audit_report* report);

#ifdef __cplusplus
}
#endif

#endif /* CORRGAUSS_H_ */
