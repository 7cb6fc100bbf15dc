// Copyright 2026 The Greencell Authors
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

/* C interface to the greencell library. All handles are opaque; every
 * function returning gc_status leaves a description of the last failure in
 * thread-local storage, readable with gc_last_error(). */

#ifndef GREENCELL_GREENCELL_H_
#define GREENCELL_GREENCELL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(GREENCELL_BUILDING_LIBRARY)
#define GC_API __attribute__((visibility("default")))
#else
#define GC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gc_status {
  GC_OK = 0,
  GC_ERR_INVALID_PARAMETER = 1,
  GC_ERR_DOMAIN = 2,
  GC_ERR_NO_SIGN_CHANGE = 3,
  GC_ERR_NON_CONVERGENCE = 4,
  GC_ERR_OVERFLOW = 5,
  GC_ERR_INFEASIBLE = 6,
  GC_ERR_NON_FINITE = 7,
  GC_ERR_IO = 8,
  GC_ERR_PARSE = 9,
  GC_ERR_NULL_ARGUMENT = 100,
  GC_ERR_INTERNAL = 101
} gc_status;

/* GC_FORMAT_SUMMARY is a one-line JSON object without the table. */
typedef enum gc_format { GC_FORMAT_CSV = 0, GC_FORMAT_JSON = 1, GC_FORMAT_SUMMARY = 2 } gc_format;
typedef enum gc_mode { GC_MODE_EXACT = 0, GC_MODE_HSE = 1 } gc_mode;
typedef enum gc_case { GC_CASE_A = 0, GC_CASE_B = 1 } gc_case;

typedef struct gc_config gc_config;
typedef struct gc_policy gc_policy;
typedef struct gc_scheme_result gc_scheme_result;
typedef struct gc_buffer gc_buffer;

typedef struct gc_metrics {
  double avg_power_w;
  double avg_users;
  double on_probability;
  double peak_bs_power_w;
} gc_metrics;

typedef struct gc_policy_summary {
  double mu;
  double lambda1;
  double lambda2;
  double lambda3;
  gc_case case_tag;
  gc_mode mode;
  gc_metrics metrics;
  double target_users;
  double max_achievable_users;
  int jump_limited;
  double min_spectral_efficiency;
  size_t rows;
} gc_policy_summary;

typedef struct gc_scheme_summary {
  char scheme[16];
  double target_users;
  double cutoff;
  double fixed_radius_m; /* NaN for adaptive-range schemes */
  double fixed_power_w;  /* NaN for fixed-range schemes */
  gc_metrics metrics;
} gc_scheme_summary;

GC_API const char* gc_version(void);
GC_API const char* gc_rng_algorithm(void);
GC_API const char* gc_status_string(gc_status status);
/* Message of the most recent failure on this thread; "" after success. */
GC_API const char* gc_last_error(void);
/* Largest achievable throughput attached to the last GC_ERR_INFEASIBLE. */
GC_API double gc_last_max_achievable(void);

/* Byte buffers returned by serializers. */
GC_API const char* gc_buffer_data(const gc_buffer* buf);
GC_API size_t gc_buffer_size(const gc_buffer* buf);
GC_API void gc_buffer_free(gc_buffer* buf);

GC_API gc_status gc_config_new(gc_config** out);
GC_API gc_status gc_config_load(const char* path, gc_config** out);
GC_API gc_status gc_config_parse(const char* text, gc_config** out);
GC_API gc_status gc_config_set(gc_config* cfg, const char* key, const char* value);
GC_API gc_status gc_config_get(const gc_config* cfg, const char* key, double* out);
/* Checks parameter invariants and loads the density. */
GC_API gc_status gc_config_validate(const gc_config* cfg);
GC_API void gc_config_free(gc_config* cfg);

GC_API gc_status gc_lambert_w0(double y, double* out);
GC_API gc_status gc_stpc_power(const gc_config* cfg, double r, int n, double* out);
GC_API gc_status gc_avg_transmit_power(const gc_config* cfg, double radius, double lambda,
                                       double* out);
GC_API gc_status gc_avg_transmit_power_exact(const gc_config* cfg, double radius, double lambda,
                                             double* out);
GC_API gc_status gc_bs_power(const gc_config* cfg, double radius, double lambda, double* out);
GC_API gc_status gc_max_range(const gc_config* cfg, double lambda, double budget, double* out);
GC_API gc_status gc_simulate_total_power(const gc_config* cfg, double lambda, double radius,
                                         long long trials, uint64_t seed, double* mean,
                                         double* std_err);
GC_API gc_status gc_max_achievable_users(const gc_config* cfg, double* out);

GC_API gc_status gc_solve(const gc_config* cfg, double u_avg, gc_mode mode, gc_policy** out);
GC_API gc_status gc_policy_for_mu(const gc_config* cfg, double mu, gc_mode mode, gc_policy** out);
GC_API gc_status gc_policy_summary_get(const gc_policy* p, gc_policy_summary* out);
/* Row i of the table: lambda, radius_m, bs_power_w, users. */
GC_API gc_status gc_policy_row(const gc_policy* p, size_t i, double out[4]);
GC_API gc_status gc_policy_serialize(const gc_policy* p, gc_format fmt, gc_buffer** out);
GC_API void gc_policy_free(gc_policy* p);

/* scheme: FRwOFC, FRwoOFC, ARwOFC or ARwoOFC (slash forms accepted). */
GC_API gc_status gc_run_scheme(const gc_config* cfg, const char* scheme, double u_avg,
                               gc_scheme_result** out);
GC_API gc_status gc_scheme_summary_get(const gc_scheme_result* r, gc_scheme_summary* out);
GC_API gc_status gc_scheme_serialize(const gc_scheme_result* const* results, size_t count,
                                     gc_format fmt, gc_buffer** out);
GC_API void gc_scheme_result_free(gc_scheme_result* r);

/* Monte Carlo check of the scaling law over radii x lambdas. `all_within`
 * is set to 1 when every point lies within three standard errors. */
GC_API gc_status gc_validate_scaling(const gc_config* cfg, const double* radii, size_t n_radii,
                                     const double* lambdas, size_t n_lambdas, long long trials,
                                     uint64_t seed, gc_format fmt, gc_buffer** out,
                                     int* all_within);

/* Average power of "optimal" and/or scheme tags at each target. */
GC_API gc_status gc_sweep(const gc_config* cfg, const double* u_avgs, size_t n_u,
                          const char* const* schemes, size_t n_schemes, gc_format fmt,
                          gc_buffer** out);

/* Reproducibility record. `extra_json` is a JSON object (or NULL). */
GC_API gc_status gc_manifest(const gc_config* cfg, const char* command, uint64_t seed,
                             long long trials, const char* extra_json, gc_buffer** out);

#ifdef __cplusplus
}
#endif

#endif /* GREENCELL_GREENCELL_H_ */
