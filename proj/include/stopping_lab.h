/* Copyright 2026 The Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the stopping-lab shared library: seeded arrival-stream
 * generation, returning-secretary stopping rules and their exact win
 * probabilities, exhaustive small-instance enumeration, and the Monte Carlo
 * experiment harness for the matroid and bipartite-matching variants.
 *
 * Conventions: every fallible call returns sl_status; on failure a
 * human-readable message is available from sl_last_error() (thread-local).
 * Exact probabilities are written as reduced "p/q" strings. Objects returned
 * through sl_*_create/generate/compute are opaque handles that must be
 * released with the matching sl_*_destroy.
 */

#ifndef STOPPING_LAB_H
#define STOPPING_LAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(STOPPING_LAB_BUILD)
#define SL_API __declspec(dllexport)
#else
#define SL_API __declspec(dllimport)
#endif
#else
#define SL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sl_status {
  SL_OK = 0,
  SL_ERR_INVALID_ARGUMENT = 1,
  SL_ERR_BUDGET_EXCEEDED = 2,
  SL_ERR_IO = 3,
  SL_ERR_BUFFER_TOO_SMALL = 4,
  SL_ERR_INTERNAL = 5
} sl_status;

SL_API const char* sl_version(void);
SL_API const char* sl_status_name(sl_status status);
SL_API const char* sl_last_error(void);

/* ---- closed-form probabilities ---- */

/* Win probability (2n+1)/(3n) of the k=2 no-waiting rule, as "p/q". */
SL_API sl_status sl_no_wait_win_prob(int64_t n, char* buf, size_t cap);
/* Exact k=3 no-waiting win probability; n >= 2. */
SL_API sl_status sl_k3_win_prob(int64_t n, double* out);
/* Finite series lower bound for the time rule at threshold mu. */
SL_API sl_status sl_win_lower_bound(double mu, int64_t k_terms, double* out);
/* Large-n limit g(x) = 2x - (4/3)x^2 - (1/3)(1-x)^2 ln(1-x^2). */
SL_API sl_status sl_asymptotic_win(double x, double* out);
/* 1/C(2k,k), the chance one item's k arrivals all precede another's. */
SL_API sl_status sl_pairwise_dominance_prob(int64_t k, char* buf, size_t cap);
/* Maximizer of the asymptotic win probability; mu_star = 1 - x_star. */
SL_API sl_status sl_optimize_mu(double tolerance, double* mu_star, double* x_star,
                                double* win_prob);

/* ---- exhaustive enumeration ---- */

typedef enum sl_policy { SL_POLICY_NO_WAIT = 0, SL_POLICY_THRESHOLD = 1 } sl_policy;

/* Exact win probability over every distinguishable arrival order, as "p/q".
 * f_value is ignored for SL_POLICY_NO_WAIT. max_orders <= 0 selects the
 * default budget of 10^7 orders. */
SL_API sl_status sl_enumerate_win_prob(int64_t n, int64_t k, sl_policy policy, int64_t f_value,
                                       int64_t max_orders, char* buf, size_t cap);

typedef struct sl_table sl_table;

/* Exact threshold-rule win probability for every f_value in [0, n]. */
SL_API sl_status sl_threshold_table(int64_t n, int64_t max_orders, sl_table** out);
SL_API size_t sl_table_size(const sl_table* table);
SL_API int64_t sl_table_f_value(const sl_table* table, size_t index);
SL_API sl_status sl_table_prob(const sl_table* table, size_t index, char* buf, size_t cap);
SL_API int64_t sl_table_argmax(const sl_table* table);
SL_API void sl_table_destroy(sl_table* table);

/* ---- arrival sequences ---- */

typedef struct sl_sequence sl_sequence;

typedef struct sl_event {
  int64_t item;
  int64_t occurrence;
  int64_t round;
  double time; /* NaN for untimed sequences */
} sl_event;

SL_API sl_status sl_sequence_generate(int64_t n, int64_t k, uint64_t seed, int timed,
                                      sl_sequence** out);
SL_API int64_t sl_sequence_length(const sl_sequence* seq);
SL_API sl_status sl_sequence_event(const sl_sequence* seq, int64_t index, sl_event* out);
/* Distinct items among the first `round` events, 1 <= round <= k*n. */
SL_API sl_status sl_sequence_distinct_prefix(const sl_sequence* seq, int64_t round, int64_t* out);
/* CSV with header "round,item,occurrence,time". */
SL_API sl_status sl_sequence_write_csv(const sl_sequence* seq, const char* path);
SL_API void sl_sequence_destroy(sl_sequence* seq);

/* ---- Monte Carlo experiments ---- */

typedef enum sl_problem {
  SL_PROBLEM_SECRETARY = 0,
  SL_PROBLEM_MATROID = 1,
  SL_PROBLEM_MATCHING = 2,
  SL_PROBLEM_CONCENTRATION = 3
} sl_problem;

typedef enum sl_sec_policy {
  SL_SEC_NO_WAIT = 0,
  SL_SEC_THRESHOLD = 1,
  SL_SEC_TIME = 2
} sl_sec_policy;

typedef struct sl_experiment_config {
  sl_problem problem;
  int64_t n;
  int64_t k;

  sl_sec_policy policy;
  int has_f_value;
  int64_t f_value;
  int has_mu;
  double mu;

  const char* instance_path; /* NULL when unused */
  const char* instance_kind; /* "uniform" | "graphic-complete" | "transversal-random" |
                              * "adversarial" | "bipartite-complete"; NULL when unused */
  int64_t rank;
  int64_t num_vertices;
  int64_t n_right;
  int64_t m;
  double eps;
  double density;

  int continued_greedy;
  int first_arrivals_only;

  int64_t trials;
  uint64_t seed;
  int jobs;
} sl_experiment_config;

SL_API void sl_experiment_config_init(sl_experiment_config* config);

typedef struct sl_report sl_report;

/* Runs the experiment; deterministic for a fixed (config, seed) including
 * under parallel execution. */
SL_API sl_status sl_simulate(const sl_experiment_config* config, sl_report** out);

SL_API int64_t sl_report_trials(const sl_report* report);
SL_API double sl_report_mean(const sl_report* report);
SL_API double sl_report_std_err(const sl_report* report);
SL_API double sl_report_ci95(const sl_report* report);
SL_API int sl_report_has_analytic(const sl_report* report);
SL_API double sl_report_analytic(const sl_report* report);
/* 1 when the analytic value is exact for this configuration, 0 when it is a
 * bound or a large-n reference. */
SL_API int sl_report_analytic_exact(const sl_report* report);
SL_API const char* sl_report_source(const sl_report* report);
SL_API double sl_report_wall_time(const sl_report* report);
/* format is "csv" or "json". Returns SL_ERR_BUFFER_TOO_SMALL and sets
 * *needed when cap is insufficient. */
SL_API sl_status sl_report_render(const sl_report* report, const char* format, char* buf,
                                  size_t cap, size_t* needed);
SL_API sl_status sl_report_write(const sl_report* report, const char* path, const char* format);
SL_API void sl_report_destroy(sl_report* report);

/* ---- arrival concentration ---- */

typedef struct sl_concentration_stats {
  int64_t n;
  int64_t trials;
  double mean;
  double stddev;
  double expected_mean; /* n^2/(2n-1) */
  double frac_outside_2;
  double frac_outside_4;
  double frac_outside_8;
} sl_concentration_stats;

/* Distribution of the number of items seen exactly once in the first half of
 * the rounds, over `trials` random arrival orders. */
SL_API sl_status sl_concentration(int64_t n, int64_t trials, uint64_t seed,
                                  sl_concentration_stats* out);

/* ---- returning-matching trace ---- */

/* Runs one returning-matching pass and writes the per-round trace CSV
 * ("round,event_item,occurrence,matching_size,matching_weight,added_edge").
 * Loads the instance from instance_path when non-NULL, otherwise generates a
 * complete bipartite n_left x n_right instance with uniform weights. */
SL_API sl_status sl_matching_trace(const char* instance_path, int64_t n_left, int64_t n_right,
                                   uint64_t seed, int first_arrivals_only, const char* csv_path);

#ifdef __cplusplus
}
#endif

#endif /* STOPPING_LAB_H */
