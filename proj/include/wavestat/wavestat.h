// Copyright 2026 The wavestat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WAVESTAT_WAVESTAT_H_
#define WAVESTAT_WAVESTAT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WS_API __declspec(dllexport)
#else
#define WS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every fallible call returns one of these; on failure a
 * human-readable message is available from ws_last_error() on the same
 * thread until the next failing call. */
typedef enum ws_status {
  WS_OK = 0,
  WS_INVALID_ARGUMENT = 1,
  WS_EMPTY_CLUSTER = 2,
  WS_INVALID_DIRECTION = 3,
  WS_INVALID_LENGTH = 4,
  WS_QUADRATURE_NOT_CONVERGED = 5,
  WS_POOR_FIT = 6,
  WS_DOMAIN_ERROR = 7,
  WS_UNBOUNDED = 8,
  WS_DEGENERATE_DRAW = 9,
  WS_CONFIG_ERROR = 10,
  WS_IO_ERROR = 11,
  WS_INTERNAL_ERROR = 100
} ws_status;

WS_API const char* ws_status_string(ws_status status);
WS_API const char* ws_last_error(void);
WS_API const char* ws_version(void);

/* Strings returned through char** out-parameters are owned by the caller. */
WS_API void ws_string_free(char* s);

/* ---- experiment configuration ------------------------------------------ */

typedef struct ws_config ws_config;

WS_API ws_status ws_config_default(ws_config** out);
WS_API ws_status ws_config_parse(const char* json, ws_config** out);
WS_API ws_status ws_config_to_json(const ws_config* config, char** out_json);
WS_API ws_status ws_config_set_h(ws_config* config, const double* h, size_t count);
/* h list of the scaling sweep (at least 4 strictly decreasing values). */
WS_API ws_status ws_config_set_sweep_h(ws_config* config, const double* h, size_t count);
WS_API ws_status ws_config_set_width(ws_config* config, double width);
WS_API ws_status ws_config_set_p(ws_config* config, const double* p, size_t count);
WS_API ws_status ws_config_set_q(ws_config* config, const double* q, size_t count);
WS_API ws_status ws_config_set_samples(ws_config* config, int64_t samples);
WS_API ws_status ws_config_set_seed(ws_config* config, uint64_t seed);
WS_API ws_status ws_config_set_workers(ws_config* config, int workers);
WS_API uint64_t ws_config_seed(const ws_config* config);
WS_API int ws_config_workers(const ws_config* config);
WS_API void ws_config_destroy(ws_config* config);

/* ---- experiment reports ------------------------------------------------- */

typedef struct ws_report ws_report;

typedef enum ws_cell_kind {
  WS_CELL_EMPTY = 0,
  WS_CELL_INT = 1,
  WS_CELL_REAL = 2,
  WS_CELL_TEXT = 3
} ws_cell_kind;

/* experiment: modes, period, moments, tail, concentration, sweep, lq,
 * det-examples. */
WS_API ws_status ws_run(const char* experiment, const ws_config* config, ws_report** out);
WS_API size_t ws_experiment_count(void);
WS_API const char* ws_experiment_name(size_t index);

WS_API const char* ws_report_experiment(const ws_report* report);
WS_API int ws_report_passed(const ws_report* report);
WS_API size_t ws_report_table_count(const ws_report* report);
WS_API const char* ws_report_table_name(const ws_report* report, size_t table);
WS_API size_t ws_report_column_count(const ws_report* report, size_t table);
WS_API const char* ws_report_column_name(const ws_report* report, size_t table, size_t column);
WS_API size_t ws_report_row_count(const ws_report* report, size_t table);
/* Writes the cell into whichever out-pointer matches its kind; the others
 * are left untouched. Text stays valid for the lifetime of the report. */
WS_API ws_cell_kind ws_report_cell(const ws_report* report, size_t table, size_t row,
                                   size_t column, int64_t* as_int, double* as_real,
                                   const char** as_text);
WS_API size_t ws_report_check_count(const ws_report* report);
WS_API ws_status ws_report_check(const ws_report* report, size_t index, const char** name,
                                 int* passed, double* value, double* threshold);
WS_API void ws_report_destroy(ws_report* report);

/* ---- spectral clusters --------------------------------------------------- */

typedef struct ws_cluster ws_cluster;

/* manifold: "torus2", "torus3" or "sphere2"; window (a, a + D h]. */
WS_API ws_status ws_cluster_create(const char* manifold, double a, double width, double h,
                                   ws_cluster** out);
WS_API size_t ws_cluster_dimension(const ws_cluster* cluster);
WS_API ws_status ws_cluster_mode(const ws_cluster* cluster, size_t index, int label[3],
                                 int64_t* frequency_squared);
/* b_{x,h}: 2 * dimension doubles, interleaved (re, im). Sphere points are
 * (colatitude, longitude, unused). */
WS_API ws_status ws_cluster_evaluate(const ws_cluster* cluster, const double point[3],
                                     double* out_re_im);
WS_API void ws_cluster_destroy(ws_cluster* cluster);

WS_API ws_status ws_cluster_count(const char* manifold, double a, double width, double h,
                                  int64_t* out);
WS_API ws_status ws_weyl_prediction(const char* manifold, double a, double width, double h,
                                    double* out);

/* ---- submanifolds and periods -------------------------------------------- */

typedef struct ws_submanifold ws_submanifold;

/* json: the "submanifold" object of the config schema. */
WS_API ws_status ws_submanifold_create(const char* manifold, const char* json,
                                       ws_submanifold** out);
WS_API double ws_submanifold_volume(const ws_submanifold* sub);
WS_API void ws_submanifold_destroy(ws_submanifold* sub);

/* out_re_im: 2 * dimension doubles; norm_sq may be NULL. */
WS_API ws_status ws_period_vector(const ws_cluster* cluster, const ws_submanifold* sub,
                                  double* out_re_im, double* norm_sq);

/* ---- sampling ------------------------------------------------------------ */

/* Uniform point on the unit sphere of C^n; out_re_im holds 2n doubles. */
WS_API ws_status ws_sample_coefficients(size_t n, uint64_t seed, uint64_t index,
                                        double* out_re_im);

/* ---- exact laws ---------------------------------------------------------- */

WS_API ws_status ws_survival_exact(double lambda, int64_t modes, double norm_sq, double* out);
WS_API ws_status ws_moment_exact(double p, int64_t modes, double norm_sq, double* out);
WS_API ws_status ws_median_exact(int64_t modes, double norm_sq, double* out);
WS_API ws_status ws_lipschitz_const_period(double p, double norm_sq, double* out);
WS_API ws_status ws_concentration_bound_period(double r, double p, int64_t modes, double norm_sq,
                                               double* derived, double* stated);
WS_API ws_status ws_mean_median_gap_bound(double p, int64_t modes, double norm_sq, double* out);
WS_API ws_status ws_renormalized_bound(double r, double p, int64_t modes, double norm_sq,
                                       double* out);
WS_API ws_status ws_bqh_exact(double q, int64_t modes, double profile_integral, double* out);
WS_API ws_status ws_bqh_sharp_limit(double q, double sub_volume, double manifold_volume,
                                    double* out);
WS_API ws_status ws_delta_exponent(double q, double* out);
WS_API ws_status ws_log_gamma(double x, double* out);
WS_API ws_status ws_log_beta(double a, double b, double* out);

#ifdef __cplusplus
}
#endif

#endif  // WAVESTAT_WAVESTAT_H_
