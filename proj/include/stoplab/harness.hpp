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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace stoplab {

enum class Problem { kSecretary, kMatroid, kMatching, kConcentration };
enum class SecretaryPolicy { kNoWait, kThreshold, kTime };

struct ExperimentConfig {
  Problem problem = Problem::kSecretary;
  std::int64_t n = 0;
  std::int64_t k = 2;

  SecretaryPolicy policy = SecretaryPolicy::kNoWait;
  std::optional<std::int64_t> f_value;
  std::optional<double> mu;

  std::optional<std::string> instance_path;
  std::optional<std::string> instance_kind;  // uniform | graphic-complete |
                                             // transversal-random | adversarial |
                                             // bipartite-complete
  std::int64_t rank = 0;
  std::int64_t num_vertices = 0;
  std::int64_t n_right = 0;
  std::int64_t m = 0;
  double eps = 1e-3;
  double density = 0.5;

  bool continued_greedy = false;
  bool first_arrivals_only = false;

  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct SimulationReport {
  std::string problem;
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::string policy;
  std::string param;
  std::int64_t trials = 0;
  double mean = 0.0;
  double std_err = 0.0;
  double ci95 = 0.0;  // 1.96 * std_err
  std::optional<double> analytic;
  std::string source;
  bool analytic_exact = false;  // true when `analytic` is an exact value for
                                // this configuration rather than a bound or
                                // large-n reference
  std::uint64_t seed = 0;

  double wall_time_seconds = 0.0;          // not serialized: reports must be
                                           // byte-identical across runs
  std::map<std::string, double> extras;    // auxiliary stats, not serialized
};

// Runs `trials` independent simulations with per-trial seeds derived from the
// master seed; deterministic for a fixed config regardless of `jobs`. Win
// probabilities use the binomial standard error, weight ratios the sample
// standard error. Invalid configs raise one aggregated invalid_argument
// listing every problem found.
SimulationReport monte_carlo(const ExperimentConfig& config);

enum class ReportFormat { kCsv, kJson };

std::string report_csv_header();
std::string render_report(const SimulationReport& report, ReportFormat format);
void write_report(const SimulationReport& report, const std::string& path, ReportFormat format);

}  // namespace stoplab
