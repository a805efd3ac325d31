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

// Command-line front end; routed entirely through the stopping_lab C API.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stopping_lab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBudget = 2;

int exit_code_for(sl_status status) {
  if (status == SL_OK) return kExitOk;
  std::cerr << "error: " << sl_last_error() << "\n";
  return status == SL_ERR_BUDGET_EXCEEDED ? kExitBudget : kExitError;
}

struct ExperimentArgs {
  std::string problem = "secretary";
  std::int64_t n = 0;
  std::int64_t k = 2;
  std::string policy = "no-wait";
  std::int64_t f_value = 0;
  double mu = 0.0;
  bool has_f_value = false;
  bool has_mu = false;
  std::string instance_path;
  std::string instance_kind;
  std::int64_t rank = 0;
  std::int64_t num_vertices = 0;
  std::int64_t n_right = 0;
  std::int64_t m = 0;
  double eps = 1e-3;
  double density = 0.5;
  bool continued_greedy = false;
  bool first_arrivals_only = false;
  std::int64_t trials = 10000;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string output;
  std::string format = "csv";
  std::string config_path;
};

void add_common_options(CLI::App* cmd, ExperimentArgs& args) {
  cmd->add_option("--trials", args.trials, "Number of independent trials")
      ->capture_default_str();
  cmd->add_option("--seed", args.seed, "Master seed; per-trial seeds derive from it")
      ->envname("STOPPING_LAB_SEED")
      ->capture_default_str();
  cmd->add_option("--jobs", args.jobs, "Worker threads; results are identical for any value")
      ->capture_default_str();
  cmd->add_option("--output", args.output, "Report file path (written in --format)");
  cmd->add_option("--format", args.format, "Report format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--config", args.config_path,
                  "Flat key=value config file; explicit flags take precedence");
}

// Applies a flat key=value config file. Keys mirror the long flag names;
// values set on the command line win over the file.
bool apply_config_file(const CLI::App* cmd, ExperimentArgs& args) {
  if (args.config_path.empty()) return true;
  std::ifstream f(args.config_path);
  if (!f) {
    std::cerr << "error: cannot open config file: " << args.config_path << "\n";
    return false;
  }
  std::string line;
  int line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: " << args.config_path << ":" << line_no << ": expected key=value\n";
      return false;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string flag = "--" + key;
    const CLI::Option* option = cmd->get_option_no_throw(flag);
    if (option != nullptr && option->count() > 0) continue;  // explicit flag wins

    try {
      if (key == "problem") {
        args.problem = value;
      } else if (key == "n") {
        args.n = std::stoll(value);
      } else if (key == "k") {
        args.k = std::stoll(value);
      } else if (key == "policy") {
        args.policy = value;
      } else if (key == "f-value") {
        args.f_value = std::stoll(value);
        args.has_f_value = true;
      } else if (key == "mu") {
        args.mu = std::stod(value);
        args.has_mu = true;
      } else if (key == "instance") {
        args.instance_path = value;
      } else if (key == "kind") {
        args.instance_kind = value;
      } else if (key == "rank") {
        args.rank = std::stoll(value);
      } else if (key == "vertices") {
        args.num_vertices = std::stoll(value);
      } else if (key == "n-right") {
        args.n_right = std::stoll(value);
      } else if (key == "density") {
        args.density = std::stod(value);
      } else if (key == "m") {
        args.m = std::stoll(value);
      } else if (key == "eps") {
        args.eps = std::stod(value);
      } else if (key == "continued-greedy") {
        args.continued_greedy = value == "1" || value == "true";
      } else if (key == "first-arrivals-only") {
        args.first_arrivals_only = value == "1" || value == "true";
      } else if (key == "trials") {
        args.trials = std::stoll(value);
      } else if (key == "seed") {
        args.seed = std::stoull(value);
      } else if (key == "jobs") {
        args.jobs = std::stoi(value);
      } else if (key == "output") {
        args.output = value;
      } else if (key == "format") {
        args.format = value;
      } else {
        std::cerr << "error: " << args.config_path << ":" << line_no << ": unknown key '" << key
                  << "'\n";
        return false;
      }
    } catch (const std::exception&) {
      std::cerr << "error: " << args.config_path << ":" << line_no << ": bad value for '" << key
                << "'\n";
      return false;
    }
  }
  return true;
}

void add_matroid_options(CLI::App* cmd, ExperimentArgs& args) {
  cmd->add_option("--kind", args.instance_kind,
                  "Generator kind: uniform | graphic-complete | transversal-random | adversarial");
  cmd->add_option("--rank", args.rank, "Rank for the uniform kind");
  cmd->add_option("--vertices", args.num_vertices, "Vertex count for graphic-complete");
  cmd->add_option("--density", args.density, "Edge density for transversal-random")
      ->capture_default_str();
  cmd->add_option("--m", args.m, "Star count for the adversarial kind");
  cmd->add_option("--eps", args.eps, "Light-edge scale for the adversarial kind")
      ->capture_default_str();
  cmd->add_flag("--continued-greedy", args.continued_greedy,
                "Diagnostic: keep greedily adding after the observation half");
}

int run_experiment(const CLI::App* cmd, ExperimentArgs& args, sl_problem problem) {
  if (!apply_config_file(cmd, args)) return kExitError;
  if (problem == SL_PROBLEM_SECRETARY && args.problem == "matroid") problem = SL_PROBLEM_MATROID;
  if (problem == SL_PROBLEM_SECRETARY && args.problem == "matching") problem = SL_PROBLEM_MATCHING;

  sl_experiment_config config;
  sl_experiment_config_init(&config);
  config.problem = problem;
  config.n = args.n;
  config.k = args.k;

  if (problem == SL_PROBLEM_SECRETARY) {
    if (args.policy == "no-wait") {
      config.policy = SL_SEC_NO_WAIT;
    } else if (args.policy == "threshold") {
      config.policy = SL_SEC_THRESHOLD;
    } else if (args.policy == "time") {
      config.policy = SL_SEC_TIME;
    } else {
      std::cerr << "error: unknown policy '" << args.policy
                << "' (expected no-wait, threshold, or time)\n";
      return kExitError;
    }
    if (args.has_f_value || cmd->count("--f-value") > 0) {
      config.has_f_value = 1;
      config.f_value = args.f_value;
    }
    if (args.has_mu || cmd->count("--mu") > 0) {
      config.has_mu = 1;
      config.mu = args.mu;
    }
  }

  if (!args.instance_path.empty()) config.instance_path = args.instance_path.c_str();
  if (!args.instance_kind.empty() && args.instance_path.empty()) {
    config.instance_kind = args.instance_kind.c_str();
  }
  config.rank = args.rank;
  config.num_vertices = args.num_vertices;
  config.n_right = args.n_right;
  config.m = args.m;
  config.eps = args.eps;
  config.density = args.density;
  config.continued_greedy = args.continued_greedy ? 1 : 0;
  config.first_arrivals_only = args.first_arrivals_only ? 1 : 0;
  config.trials = args.trials;
  config.seed = args.seed;
  config.jobs = args.jobs;

  sl_report* report = nullptr;
  const sl_status status = sl_simulate(&config, &report);
  if (status != SL_OK) return exit_code_for(status);

  std::printf("trials=%" PRId64 " mean=%.9g std_err=%.6g ci95=%.6g\n", sl_report_trials(report),
              sl_report_mean(report), sl_report_std_err(report), sl_report_ci95(report));
  if (sl_report_has_analytic(report)) {
    const double analytic = sl_report_analytic(report);
    const double std_err = sl_report_std_err(report);
    std::printf("analytic=%.9g source=%s\n", analytic, sl_report_source(report));
    if (sl_report_analytic_exact(report) != 0 && std_err > 0.0 &&
        std::abs(sl_report_mean(report) - analytic) > 4.0 * std_err) {
      std::fprintf(stderr,
                   "warning: empirical mean deviates from the exact reference by more than "
                   "4 standard errors\n");
    }
  }
  std::printf("seed=%" PRIu64 " wall_time=%.3fs\n", args.seed, sl_report_wall_time(report));

  int code = kExitOk;
  if (!args.output.empty()) {
    const sl_status write_status =
        sl_report_write(report, args.output.c_str(), args.format.c_str());
    if (write_status != SL_OK) {
      code = exit_code_for(write_status);
    } else {
      std::printf("report written to %s\n", args.output.c_str());
    }
  }
  sl_report_destroy(report);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stopping-lab: returning-arrival stopping rules, matroid and matching selection,"
               " exact small-instance enumeration, and Monte Carlo experiments"};
  app.require_subcommand(1);

  ExperimentArgs args;

  auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo experiment");
  simulate->add_option("--problem", args.problem, "secretary | matroid | matching")
      ->check(CLI::IsMember({"secretary", "matroid", "matching"}))
      ->capture_default_str();
  simulate->add_option("--n", args.n, "Item count (left-side size for matching)");
  simulate->add_option("--k", args.k, "Arrivals per item")->capture_default_str();
  simulate->add_option("--policy", args.policy, "Secretary policy: no-wait | threshold | time")
      ->capture_default_str();
  simulate->add_option("--f-value", args.f_value, "Observation threshold (threshold policy)");
  simulate->add_option("--mu", args.mu, "Time threshold in [0,1) (time policy)");
  simulate->add_option("--instance", args.instance_path, "Instance file (matroid/matching)");
  simulate->add_option("--n-right", args.n_right, "Right-side size (transversal/matching)");
  simulate->add_flag("--first-arrivals-only", args.first_arrivals_only,
                     "Run matching improvement rounds only on first arrivals");
  add_matroid_options(simulate, args);
  add_common_options(simulate, args);

  std::int64_t exact_n = 0;
  std::int64_t exact_k = 2;
  std::string exact_policy = "no-wait";
  std::int64_t exact_f = 0;
  std::int64_t max_orders = 0;
  auto* exact = app.add_subcommand("exact", "Exact win probability by exhaustive enumeration");
  exact->add_option("--n", exact_n, "Item count")->required();
  exact->add_option("--k", exact_k, "Arrivals per item")->capture_default_str();
  exact->add_option("--policy", exact_policy, "no-wait | threshold")
      ->check(CLI::IsMember({"no-wait", "threshold"}))
      ->capture_default_str();
  exact->add_option("--f-value", exact_f, "Observation threshold (threshold policy)");
  exact->add_option("--max-orders", max_orders, "Enumeration budget (default 10^7)");

  double tol = 1e-6;
  auto* optimize = app.add_subcommand("optimize-mu", "Maximize the asymptotic win probability");
  optimize->add_option("--tol", tol, "Solver tolerance")->capture_default_str();

  std::int64_t table_n = 0;
  std::string table_output;
  auto* table_cmd =
      app.add_subcommand("table", "Exact threshold-rule win probability for every f_value");
  table_cmd->add_option("--n", table_n, "Item count")->required();
  table_cmd->add_option("--max-orders", max_orders, "Enumeration budget (default 10^7)");
  table_cmd->add_option("--output", table_output, "Also write the table to this file");

  auto* matroid = app.add_subcommand("matroid", "Returning matroid secretary experiment");
  matroid->add_option("--n", args.n, "Ground-set size (uniform/transversal kinds)");
  matroid->add_option("--instance", args.instance_path, "Instance file (overrides --kind)");
  matroid->add_option("--n-right", args.n_right, "Right-side size for transversal-random");
  add_matroid_options(matroid, args);
  add_common_options(matroid, args);

  std::string trace_path;
  auto* matching = app.add_subcommand("matching", "Returning bipartite matching experiment");
  matching->add_option("--n", args.n, "Left-side size for generated instances");
  matching->add_option("--instance", args.instance_path,
                       "Instance file: first line 'n_left n_right', then 'left right weight'");
  matching->add_option("--n-right", args.n_right, "Right-side size for generated instances");
  matching->add_flag("--first-arrivals-only", args.first_arrivals_only,
                     "Run improvement rounds only on first arrivals");
  matching->add_option("--trace", trace_path,
                       "Write a single-run per-round trace CSV to this path");
  add_common_options(matching, args);

  auto* concentration =
      app.add_subcommand("concentration", "Distribution of the once-arrived count at half time");
  concentration->add_option("--n", args.n, "Item count")->required();
  add_common_options(concentration, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << std::flush;
    return kExitError;
  }

  if (simulate->parsed()) {
    sl_problem problem = SL_PROBLEM_SECRETARY;
    if (args.problem == "matroid") problem = SL_PROBLEM_MATROID;
    if (args.problem == "matching") problem = SL_PROBLEM_MATCHING;
    return run_experiment(simulate, args, problem);
  }

  if (exact->parsed()) {
    char buf[128];
    const sl_status status = sl_enumerate_win_prob(
        exact_n, exact_k, exact_policy == "threshold" ? SL_POLICY_THRESHOLD : SL_POLICY_NO_WAIT,
        exact_f, max_orders, buf, sizeof(buf));
    if (status != SL_OK) return exit_code_for(status);
    std::printf("%s\n", buf);
    return kExitOk;
  }

  if (optimize->parsed()) {
    double mu_star = 0.0;
    double x_star = 0.0;
    double win_prob = 0.0;
    const sl_status status = sl_optimize_mu(tol, &mu_star, &x_star, &win_prob);
    if (status != SL_OK) return exit_code_for(status);
    std::printf("mu_star=%.6f\nx_star=%.6f\nwin_prob=%.6f\n", mu_star, x_star, win_prob);
    return kExitOk;
  }

  if (table_cmd->parsed()) {
    sl_table* table = nullptr;
    const sl_status status = sl_threshold_table(table_n, max_orders, &table);
    if (status != SL_OK) return exit_code_for(status);
    std::string text;
    char buf[128];
    for (size_t i = 0; i < sl_table_size(table); ++i) {
      if (sl_table_prob(table, i, buf, sizeof(buf)) != SL_OK) {
        sl_table_destroy(table);
        return kExitError;
      }
      text += std::to_string(sl_table_f_value(table, i)) + " " + buf + "\n";
    }
    text += "argmax " + std::to_string(sl_table_argmax(table)) + "\n";
    std::fputs(text.c_str(), stdout);
    if (!table_output.empty()) {
      FILE* f = std::fopen(table_output.c_str(), "wb");
      if (f == nullptr) {
        std::cerr << "error: cannot open for writing: " << table_output << "\n";
        sl_table_destroy(table);
        return kExitError;
      }
      std::fputs(text.c_str(), f);
      std::fclose(f);
    }
    sl_table_destroy(table);
    return kExitOk;
  }

  if (matroid->parsed()) return run_experiment(matroid, args, SL_PROBLEM_MATROID);

  if (matching->parsed()) {
    if (!trace_path.empty()) {
      const sl_status status = sl_matching_trace(
          args.instance_path.empty() ? nullptr : args.instance_path.c_str(), args.n, args.n_right,
          args.seed, args.first_arrivals_only ? 1 : 0, trace_path.c_str());
      if (status != SL_OK) return exit_code_for(status);
      std::printf("trace written to %s\n", trace_path.c_str());
    }
    return run_experiment(matching, args, SL_PROBLEM_MATCHING);
  }

  if (concentration->parsed()) {
    sl_concentration_stats stats;
    const sl_status status = sl_concentration(args.n, args.trials, args.seed, &stats);
    if (status != SL_OK) return exit_code_for(status);
    std::printf("n=%" PRId64 " trials=%" PRId64 "\n", stats.n, stats.trials);
    std::printf("mean=%.6f expected=%.6f stddev=%.6f\n", stats.mean, stats.expected_mean,
                stats.stddev);
    std::printf("frac(|s-n/2|>2sqrt(n))=%.6g frac(>4sqrt(n))=%.6g frac(>8sqrt(n))=%.6g\n",
                stats.frac_outside_2, stats.frac_outside_4, stats.frac_outside_8);
    return run_experiment(concentration, args, SL_PROBLEM_CONCENTRATION);
  }

  std::cerr << app.help();
  return kExitError;
}
