// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define STOPPING_LAB_BUILD

#include "stopping_lab.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>

#include "stoplab/random.hpp"

#include "stoplab/arrival.hpp"
#include "stoplab/errors.hpp"
#include "stoplab/harness.hpp"
#include "stoplab/matching.hpp"
#include "stoplab/oracle.hpp"
#include "stoplab/secretary.hpp"

struct sl_table {
  stoplab::ThresholdTable table;
};

struct sl_sequence {
  stoplab::ArrivalSequence seq;
};

struct sl_report {
  stoplab::SimulationReport report;
};

namespace {

std::string& last_error_storage() {
  thread_local std::string message;
  return message;
}

template <typename F>
sl_status guarded(F&& body) {
  try {
    const sl_status status = body();
    if (status == SL_OK) last_error_storage().clear();
    return status;
  } catch (const stoplab::BudgetExceededError& e) {
    last_error_storage() = e.what();
    return SL_ERR_BUDGET_EXCEEDED;
  } catch (const std::invalid_argument& e) {
    last_error_storage() = e.what();
    return SL_ERR_INVALID_ARGUMENT;
  } catch (const std::runtime_error& e) {
    last_error_storage() = e.what();
    return SL_ERR_IO;
  } catch (const std::bad_alloc&) {
    last_error_storage() = "out of memory";
    return SL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error_storage() = e.what();
    return SL_ERR_INTERNAL;
  }
}

sl_status fill_buffer(const std::string& value, char* buf, size_t cap) {
  if (buf == nullptr) {
    last_error_storage() = "output buffer is null";
    return SL_ERR_INVALID_ARGUMENT;
  }
  if (value.size() + 1 > cap) {
    last_error_storage() =
        "buffer too small: need " + std::to_string(value.size() + 1) + " bytes";
    return SL_ERR_BUFFER_TOO_SMALL;
  }
  std::memcpy(buf, value.c_str(), value.size() + 1);
  return SL_OK;
}

sl_status invalid(const char* message) {
  last_error_storage() = message;
  return SL_ERR_INVALID_ARGUMENT;
}

stoplab::EnumerationBudget budget_from(int64_t max_orders) {
  stoplab::EnumerationBudget budget;
  if (max_orders > 0) budget.max_orders = max_orders;
  return budget;
}

bool parse_format(const char* format, stoplab::ReportFormat& out) {
  if (format == nullptr) return false;
  const std::string f = format;
  if (f == "csv") {
    out = stoplab::ReportFormat::kCsv;
    return true;
  }
  if (f == "json") {
    out = stoplab::ReportFormat::kJson;
    return true;
  }
  return false;
}

}  // namespace

extern "C" {

const char* sl_version(void) { return "1.0.0"; }

const char* sl_status_name(sl_status status) {
  switch (status) {
    case SL_OK:
      return "ok";
    case SL_ERR_INVALID_ARGUMENT:
      return "invalid-argument";
    case SL_ERR_BUDGET_EXCEEDED:
      return "budget-exceeded";
    case SL_ERR_IO:
      return "io-error";
    case SL_ERR_BUFFER_TOO_SMALL:
      return "buffer-too-small";
    case SL_ERR_INTERNAL:
      return "internal-error";
  }
  return "unknown";
}

const char* sl_last_error(void) { return last_error_storage().c_str(); }

sl_status sl_no_wait_win_prob(int64_t n, char* buf, size_t cap) {
  return guarded([&] { return fill_buffer(stoplab::no_wait_win_prob(n).str(), buf, cap); });
}

sl_status sl_k3_win_prob(int64_t n, double* out) {
  if (out == nullptr) return invalid("output pointer is null");
  return guarded([&] {
    *out = stoplab::k3_win_prob(n);
    return SL_OK;
  });
}

sl_status sl_win_lower_bound(double mu, int64_t k_terms, double* out) {
  if (out == nullptr) return invalid("output pointer is null");
  return guarded([&] {
    *out = stoplab::win_lower_bound(mu, k_terms);
    return SL_OK;
  });
}

sl_status sl_asymptotic_win(double x, double* out) {
  if (out == nullptr) return invalid("output pointer is null");
  return guarded([&] {
    *out = stoplab::asymptotic_win(x);
    return SL_OK;
  });
}

sl_status sl_pairwise_dominance_prob(int64_t k, char* buf, size_t cap) {
  return guarded([&] { return fill_buffer(stoplab::pairwise_dominance_prob(k).str(), buf, cap); });
}

sl_status sl_optimize_mu(double tolerance, double* mu_star, double* x_star, double* win_prob) {
  if (mu_star == nullptr || x_star == nullptr || win_prob == nullptr) {
    return invalid("output pointer is null");
  }
  return guarded([&] {
    const auto result = stoplab::optimize_mu(tolerance);
    *mu_star = result.mu_star;
    *x_star = result.x_star;
    *win_prob = result.win_prob;
    return SL_OK;
  });
}

sl_status sl_enumerate_win_prob(int64_t n, int64_t k, sl_policy policy, int64_t f_value,
                                int64_t max_orders, char* buf, size_t cap) {
  return guarded([&] {
    stoplab::PolicySpec spec;
    spec.family = policy == SL_POLICY_THRESHOLD ? stoplab::PolicyFamily::kThreshold
                                                : stoplab::PolicyFamily::kNoWait;
    spec.f_value = f_value;
    const auto prob = stoplab::enumerate_win_prob(n, k, spec, budget_from(max_orders));
    return fill_buffer(prob.str(), buf, cap);
  });
}

sl_status sl_threshold_table(int64_t n, int64_t max_orders, sl_table** out) {
  if (out == nullptr) return invalid("output pointer is null");
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<sl_table>();
    handle->table = stoplab::exact_threshold_table(n, budget_from(max_orders));
    *out = handle.release();
    return SL_OK;
  });
}

size_t sl_table_size(const sl_table* table) { return table ? table->table.rows.size() : 0; }

int64_t sl_table_f_value(const sl_table* table, size_t index) {
  if (table == nullptr || index >= table->table.rows.size()) return -1;
  return table->table.rows[index].first;
}

sl_status sl_table_prob(const sl_table* table, size_t index, char* buf, size_t cap) {
  if (table == nullptr) return invalid("table handle is null");
  if (index >= table->table.rows.size()) return invalid("table index out of range");
  return guarded([&] { return fill_buffer(table->table.rows[index].second.str(), buf, cap); });
}

int64_t sl_table_argmax(const sl_table* table) { return table ? table->table.argmax : -1; }

void sl_table_destroy(sl_table* table) { delete table; }

sl_status sl_sequence_generate(int64_t n, int64_t k, uint64_t seed, int timed, sl_sequence** out) {
  if (out == nullptr) return invalid("output pointer is null");
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<sl_sequence>();
    handle->seq = timed ? stoplab::gen_timed_sequence(n, k, seed)
                        : stoplab::gen_permutation_sequence(n, k, seed);
    *out = handle.release();
    return SL_OK;
  });
}

int64_t sl_sequence_length(const sl_sequence* seq) {
  return seq ? static_cast<int64_t>(seq->seq.events.size()) : 0;
}

sl_status sl_sequence_event(const sl_sequence* seq, int64_t index, sl_event* out) {
  if (seq == nullptr || out == nullptr) return invalid("null argument");
  if (index < 0 || index >= static_cast<int64_t>(seq->seq.events.size())) {
    return invalid("event index out of range");
  }
  const auto& e = seq->seq.events[index];
  out->item = e.item;
  out->occurrence = e.occurrence;
  out->round = e.round;
  out->time = e.time;
  return SL_OK;
}

sl_status sl_sequence_distinct_prefix(const sl_sequence* seq, int64_t round, int64_t* out) {
  if (seq == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = stoplab::distinct_count_prefix(seq->seq, round);
    return SL_OK;
  });
}

sl_status sl_sequence_write_csv(const sl_sequence* seq, const char* path) {
  if (seq == nullptr || path == nullptr) return invalid("null argument");
  return guarded([&] {
    stoplab::write_sequence_csv(seq->seq, path);
    return SL_OK;
  });
}

void sl_sequence_destroy(sl_sequence* seq) { delete seq; }

void sl_experiment_config_init(sl_experiment_config* config) {
  if (config == nullptr) return;
  std::memset(config, 0, sizeof(*config));
  config->problem = SL_PROBLEM_SECRETARY;
  config->k = 2;
  config->policy = SL_SEC_NO_WAIT;
  config->eps = 1e-3;
  config->density = 0.5;
  config->jobs = 1;
}

sl_status sl_simulate(const sl_experiment_config* config, sl_report** out) {
  if (config == nullptr || out == nullptr) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    stoplab::ExperimentConfig cfg;
    switch (config->problem) {
      case SL_PROBLEM_SECRETARY:
        cfg.problem = stoplab::Problem::kSecretary;
        break;
      case SL_PROBLEM_MATROID:
        cfg.problem = stoplab::Problem::kMatroid;
        break;
      case SL_PROBLEM_MATCHING:
        cfg.problem = stoplab::Problem::kMatching;
        break;
      case SL_PROBLEM_CONCENTRATION:
        cfg.problem = stoplab::Problem::kConcentration;
        break;
    }
    cfg.n = config->n;
    cfg.k = config->k;
    switch (config->policy) {
      case SL_SEC_NO_WAIT:
        cfg.policy = stoplab::SecretaryPolicy::kNoWait;
        break;
      case SL_SEC_THRESHOLD:
        cfg.policy = stoplab::SecretaryPolicy::kThreshold;
        break;
      case SL_SEC_TIME:
        cfg.policy = stoplab::SecretaryPolicy::kTime;
        break;
    }
    if (config->has_f_value) cfg.f_value = config->f_value;
    if (config->has_mu) cfg.mu = config->mu;
    if (config->instance_path != nullptr) cfg.instance_path = config->instance_path;
    if (config->instance_kind != nullptr) cfg.instance_kind = config->instance_kind;
    cfg.rank = config->rank;
    cfg.num_vertices = config->num_vertices;
    cfg.n_right = config->n_right;
    cfg.m = config->m;
    cfg.eps = config->eps;
    cfg.density = config->density;
    cfg.continued_greedy = config->continued_greedy != 0;
    cfg.first_arrivals_only = config->first_arrivals_only != 0;
    cfg.trials = config->trials;
    cfg.seed = config->seed;
    cfg.jobs = config->jobs;

    auto handle = std::make_unique<sl_report>();
    handle->report = stoplab::monte_carlo(cfg);
    *out = handle.release();
    return SL_OK;
  });
}

int64_t sl_report_trials(const sl_report* report) { return report ? report->report.trials : 0; }
double sl_report_mean(const sl_report* report) { return report ? report->report.mean : 0.0; }
double sl_report_std_err(const sl_report* report) { return report ? report->report.std_err : 0.0; }
double sl_report_ci95(const sl_report* report) { return report ? report->report.ci95 : 0.0; }

int sl_report_has_analytic(const sl_report* report) {
  return report != nullptr && report->report.analytic.has_value() ? 1 : 0;
}

double sl_report_analytic(const sl_report* report) {
  return report && report->report.analytic ? *report->report.analytic : 0.0;
}

int sl_report_analytic_exact(const sl_report* report) {
  return report != nullptr && report->report.analytic_exact ? 1 : 0;
}

const char* sl_report_source(const sl_report* report) {
  return report ? report->report.source.c_str() : "";
}

double sl_report_wall_time(const sl_report* report) {
  return report ? report->report.wall_time_seconds : 0.0;
}

sl_status sl_report_render(const sl_report* report, const char* format, char* buf, size_t cap,
                           size_t* needed) {
  if (report == nullptr) return invalid("report handle is null");
  stoplab::ReportFormat fmt;
  if (!parse_format(format, fmt)) return invalid("format must be \"csv\" or \"json\"");
  return guarded([&] {
    const std::string text = stoplab::render_report(report->report, fmt);
    if (needed != nullptr) *needed = text.size() + 1;
    return fill_buffer(text, buf, cap);
  });
}

sl_status sl_report_write(const sl_report* report, const char* path, const char* format) {
  if (report == nullptr || path == nullptr) return invalid("null argument");
  stoplab::ReportFormat fmt;
  if (!parse_format(format, fmt)) return invalid("format must be \"csv\" or \"json\"");
  return guarded([&] {
    stoplab::write_report(report->report, path, fmt);
    return SL_OK;
  });
}

void sl_report_destroy(sl_report* report) { delete report; }

sl_status sl_matching_trace(const char* instance_path, int64_t n_left, int64_t n_right,
                            uint64_t seed, int first_arrivals_only, const char* csv_path) {
  if (csv_path == nullptr) return invalid("csv_path is null");
  return guarded([&] {
    const stoplab::BipartiteInstance inst =
        instance_path != nullptr
            ? stoplab::load_bipartite_instance(instance_path)
            : stoplab::complete_bipartite_instance(n_left, n_right, stoplab::mix64(seed ^ 1));
    const auto seq = stoplab::gen_permutation_sequence(inst.n_left, 2, stoplab::mix64(seed ^ 2));
    stoplab::ReturningMatchingOptions options;
    options.first_arrivals_only = first_arrivals_only != 0;
    options.record_trace = true;
    const auto result = stoplab::run_returning_matching(inst, seq, options);
    std::ofstream f(csv_path, std::ios::binary);
    if (!f) throw std::runtime_error(std::string("cannot open for writing: ") + csv_path);
    f << stoplab::matching_trace_to_csv(result);
    return SL_OK;
  });
}

sl_status sl_concentration(int64_t n, int64_t trials, uint64_t seed, sl_concentration_stats* out) {
  if (out == nullptr) return invalid("output pointer is null");
  return guarded([&] {
    const auto stats = stoplab::concentration_stats(n, trials, seed);
    out->n = stats.n;
    out->trials = stats.trials;
    out->mean = stats.mean;
    out->stddev = stats.stddev;
    out->expected_mean = stats.expected_mean;
    out->frac_outside_2 = stats.frac_outside[0];
    out->frac_outside_4 = stats.frac_outside[1];
    out->frac_outside_8 = stats.frac_outside[2];
    return SL_OK;
  });
}

}  // extern "C"
