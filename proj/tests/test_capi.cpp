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

// Exercises the shared-library surface exactly as an external consumer would:
// through stopping_lab.h only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "stopping_lab.h"

TEST_CASE("version and status names") {
  CHECK(sl_version() != nullptr);
  CHECK(std::strcmp(sl_status_name(SL_OK), "ok") == 0);
  CHECK(std::strcmp(sl_status_name(SL_ERR_BUDGET_EXCEEDED), "budget-exceeded") == 0);
}

TEST_CASE("closed forms through the C surface") {
  char buf[64];
  REQUIRE(sl_no_wait_win_prob(2, buf, sizeof(buf)) == SL_OK);
  CHECK(std::string(buf) == "5/6");
  REQUIRE(sl_no_wait_win_prob(1, buf, sizeof(buf)) == SL_OK);
  CHECK(std::string(buf) == "1");

  CHECK(sl_no_wait_win_prob(0, buf, sizeof(buf)) == SL_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(sl_last_error()) > 0);

  char tiny[2];
  CHECK(sl_no_wait_win_prob(2, tiny, sizeof(tiny)) == SL_ERR_BUFFER_TOO_SMALL);

  double value = 0.0;
  REQUIRE(sl_k3_win_prob(2, &value) == SL_OK);
  CHECK(value == doctest::Approx(0.95));
  CHECK(sl_k3_win_prob(1, &value) == SL_ERR_INVALID_ARGUMENT);

  REQUIRE(sl_asymptotic_win(0.727374, &value) == SL_OK);
  CHECK(value == doctest::Approx(0.767974).epsilon(1e-5));
  CHECK(sl_asymptotic_win(1.5, &value) == SL_ERR_INVALID_ARGUMENT);

  REQUIRE(sl_win_lower_bound(0.0, 5, &value) == SL_OK);
  CHECK(value == doctest::Approx(2.0 / 3.0));

  REQUIRE(sl_pairwise_dominance_prob(2, buf, sizeof(buf)) == SL_OK);
  CHECK(std::string(buf) == "1/6");
}

TEST_CASE("optimizer through the C surface") {
  double mu = 0.0, x = 0.0, p = 0.0;
  REQUIRE(sl_optimize_mu(1e-6, &mu, &x, &p) == SL_OK);
  CHECK(mu == doctest::Approx(0.272626).epsilon(1e-4));
  CHECK(x == doctest::Approx(0.727374).epsilon(1e-4));
  CHECK(p == doctest::Approx(0.767974).epsilon(1e-4));
  CHECK(sl_optimize_mu(-1.0, &mu, &x, &p) == SL_ERR_INVALID_ARGUMENT);
  CHECK(sl_optimize_mu(1e-6, nullptr, &x, &p) == SL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("enumeration and budget errors") {
  char buf[64];
  REQUIRE(sl_enumerate_win_prob(3, 2, SL_POLICY_NO_WAIT, 0, 0, buf, sizeof(buf)) == SL_OK);
  CHECK(std::string(buf) == "7/9");
  REQUIRE(sl_enumerate_win_prob(2, 2, SL_POLICY_THRESHOLD, 0, 0, buf, sizeof(buf)) == SL_OK);
  CHECK(std::string(buf) == "5/6");

  CHECK(sl_enumerate_win_prob(3, 2, SL_POLICY_NO_WAIT, 0, 10, buf, sizeof(buf)) ==
        SL_ERR_BUDGET_EXCEEDED);
  CHECK(std::string(sl_last_error()).find("90") != std::string::npos);
}

TEST_CASE("threshold table handle") {
  sl_table* table = nullptr;
  REQUIRE(sl_threshold_table(3, 0, &table) == SL_OK);
  REQUIRE(table != nullptr);
  CHECK(sl_table_size(table) == 4);
  CHECK(sl_table_f_value(table, 0) == 0);
  char buf[64];
  REQUIRE(sl_table_prob(table, 0, buf, sizeof(buf)) == SL_OK);
  CHECK(std::string(buf) == "7/9");
  REQUIRE(sl_table_prob(table, 1, buf, sizeof(buf)) == SL_OK);
  CHECK(std::string(buf) == "5/6");
  CHECK(sl_table_argmax(table) == 1);
  CHECK(sl_table_prob(table, 9, buf, sizeof(buf)) == SL_ERR_INVALID_ARGUMENT);
  sl_table_destroy(table);
}

TEST_CASE("sequence handles") {
  sl_sequence* seq = nullptr;
  REQUIRE(sl_sequence_generate(3, 2, 42, 0, &seq) == SL_OK);
  REQUIRE(seq != nullptr);
  CHECK(sl_sequence_length(seq) == 6);

  sl_event event;
  REQUIRE(sl_sequence_event(seq, 0, &event) == SL_OK);
  CHECK(event.round == 1);
  CHECK(event.occurrence == 1);
  CHECK(std::isnan(event.time));
  CHECK(sl_sequence_event(seq, 6, &event) == SL_ERR_INVALID_ARGUMENT);

  int64_t distinct = 0;
  REQUIRE(sl_sequence_distinct_prefix(seq, 6, &distinct) == SL_OK);
  CHECK(distinct == 3);
  CHECK(sl_sequence_distinct_prefix(seq, 0, &distinct) == SL_ERR_INVALID_ARGUMENT);

  REQUIRE(sl_sequence_write_csv(seq, "/tmp/stoplab_capi_seq.csv") == SL_OK);
  std::ifstream f("/tmp/stoplab_capi_seq.csv");
  std::string header;
  std::getline(f, header);
  CHECK(header == "round,item,occurrence,time");
  sl_sequence_destroy(seq);

  sl_sequence* timed = nullptr;
  REQUIRE(sl_sequence_generate(2, 2, 7, 1, &timed) == SL_OK);
  REQUIRE(sl_sequence_event(timed, 0, &event) == SL_OK);
  CHECK(event.time >= 0.0);
  CHECK(event.time < 1.0);
  sl_sequence_destroy(timed);

  CHECK(sl_sequence_generate(0, 2, 1, 0, &seq) == SL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("simulation handles and reports") {
  sl_experiment_config config;
  sl_experiment_config_init(&config);
  config.problem = SL_PROBLEM_SECRETARY;
  config.n = 1;
  config.k = 2;
  config.trials = 10;
  config.seed = 1;

  sl_report* report = nullptr;
  REQUIRE(sl_simulate(&config, &report) == SL_OK);
  REQUIRE(report != nullptr);
  CHECK(sl_report_trials(report) == 10);
  CHECK(sl_report_mean(report) == 1.0);
  CHECK(sl_report_std_err(report) == 0.0);
  CHECK(sl_report_ci95(report) == 0.0);
  CHECK(sl_report_has_analytic(report) == 1);
  CHECK(sl_report_analytic(report) == 1.0);
  CHECK(sl_report_analytic_exact(report) == 1);
  CHECK(std::string(sl_report_source(report)) == "no-wait-closed-form");
  CHECK(sl_report_wall_time(report) >= 0.0);

  char buf[1024];
  size_t needed = 0;
  REQUIRE(sl_report_render(report, "csv", buf, sizeof(buf), &needed) == SL_OK);
  CHECK(std::string(buf).find("problem,n,k,policy,param") == 0);
  CHECK(needed == std::strlen(buf) + 1);

  char small[4];
  CHECK(sl_report_render(report, "csv", small, sizeof(small), &needed) ==
        SL_ERR_BUFFER_TOO_SMALL);
  CHECK(needed > sizeof(small));
  CHECK(sl_report_render(report, "yaml", buf, sizeof(buf), &needed) == SL_ERR_INVALID_ARGUMENT);

  REQUIRE(sl_report_write(report, "/tmp/stoplab_capi_report.json", "json") == SL_OK);
  std::ifstream f("/tmp/stoplab_capi_report.json");
  std::ostringstream text;
  text << f.rdbuf();
  CHECK(text.str().find("\"problem\": \"secretary\"") != std::string::npos);
  sl_report_destroy(report);

  // Validation failures surface as one aggregated message.
  config.trials = 0;
  CHECK(sl_simulate(&config, &report) == SL_ERR_INVALID_ARGUMENT);
  CHECK(std::string(sl_last_error()).find("trials") != std::string::npos);
}

TEST_CASE("simulation determinism across jobs through the C surface") {
  auto run = [](int jobs) {
    sl_experiment_config config;
    sl_experiment_config_init(&config);
    config.problem = SL_PROBLEM_SECRETARY;
    config.n = 12;
    config.trials = 20000;
    config.seed = 99;
    config.jobs = jobs;
    sl_report* report = nullptr;
    REQUIRE(sl_simulate(&config, &report) == SL_OK);
    char buf[2048];
    REQUIRE(sl_report_render(report, "json", buf, sizeof(buf), nullptr) == SL_OK);
    std::string out(buf);
    sl_report_destroy(report);
    return out;
  };
  CHECK(run(1) == run(5));
}

TEST_CASE("matching trace through the C surface") {
  REQUIRE(sl_matching_trace(nullptr, 6, 6, 3, 0, "/tmp/stoplab_capi_trace.csv") == SL_OK);
  std::ifstream f("/tmp/stoplab_capi_trace.csv");
  std::string header;
  std::getline(f, header);
  CHECK(header == "round,event_item,occurrence,matching_size,matching_weight,added_edge");
  int rows = 0;
  std::string line;
  while (std::getline(f, line)) ++rows;
  CHECK(rows == 12);
}

TEST_CASE("concentration through the C surface") {
  sl_concentration_stats stats;
  REQUIRE(sl_concentration(100, 500, 7, &stats) == SL_OK);
  CHECK(stats.n == 100);
  CHECK(stats.trials == 500);
  CHECK(stats.expected_mean == doctest::Approx(100.0 * 100.0 / 199.0));
  CHECK(std::abs(stats.mean - stats.expected_mean) < 3.0);
  CHECK(stats.frac_outside_8 <= stats.frac_outside_4);
  CHECK(sl_concentration(0, 10, 1, &stats) == SL_ERR_INVALID_ARGUMENT);
}
