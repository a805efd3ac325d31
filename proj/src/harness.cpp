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

#include "stoplab/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include <json.hpp>

#include "stoplab/arrival.hpp"
#include "stoplab/matching.hpp"
#include "stoplab/matroid.hpp"
#include "stoplab/random.hpp"
#include "stoplab/secretary.hpp"

namespace stoplab {

namespace {

struct BlockAggregate {
  double sum = 0.0;
  double sumsq = 0.0;
};

// Trials are split into fixed blocks; each block is summed in trial order by
// whichever worker owns it and blocks reduce in index order, so the result is
// bit-identical for any worker count.
constexpr std::int64_t kBlockSize = 1024;

void run_blocks(std::int64_t trials, int jobs, const std::function<double(std::int64_t)>& trial,
                double& out_sum, double& out_sumsq) {
  const std::int64_t num_blocks = (trials + kBlockSize - 1) / kBlockSize;
  std::vector<BlockAggregate> blocks(num_blocks);

  auto worker_body = [&](std::atomic<std::int64_t>& next) {
    for (;;) {
      const std::int64_t b = next.fetch_add(1);
      if (b >= num_blocks) break;
      const std::int64_t begin = b * kBlockSize;
      const std::int64_t end = std::min(trials, begin + kBlockSize);
      BlockAggregate agg;
      for (std::int64_t t = begin; t < end; ++t) {
        const double x = trial(t);
        agg.sum += x;
        agg.sumsq += x * x;
      }
      blocks[b] = agg;
    }
  };

  const int workers = static_cast<int>(std::min<std::int64_t>(std::max(jobs, 1), num_blocks));
  std::atomic<std::int64_t> next{0};
  if (workers <= 1) {
    worker_body(next);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back([&] { worker_body(next); });
    for (auto& th : pool) th.join();
  }

  out_sum = 0.0;
  out_sumsq = 0.0;
  for (const auto& b : blocks) {
    out_sum += b.sum;
    out_sumsq += b.sumsq;
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void validate(const ExperimentConfig& cfg) {
  std::vector<std::string> problems;
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) problems.push_back(msg);
  };

  need(cfg.trials >= 1, "trials must be >= 1");
  need(cfg.jobs >= 1, "jobs must be >= 1");

  const bool has_instance = cfg.instance_path.has_value();
  const bool has_kind = cfg.instance_kind.has_value();

  switch (cfg.problem) {
    case Problem::kSecretary: {
      need(cfg.n >= 1, "n must be >= 1");
      need(!has_instance && !has_kind, "instances apply only to matroid/matching problems");
      switch (cfg.policy) {
        case SecretaryPolicy::kNoWait:
          need(cfg.k >= 1, "k must be >= 1");
          need(!cfg.mu.has_value(), "mu applies only to the time policy");
          need(!cfg.f_value.has_value(), "f_value applies only to the threshold policy");
          break;
        case SecretaryPolicy::kThreshold:
          need(cfg.k == 2, "threshold policy requires k=2");
          need(!cfg.mu.has_value(), "mu applies only to the time policy");
          need(cfg.f_value.has_value(), "threshold policy requires f_value");
          if (cfg.f_value) {
            need(*cfg.f_value >= 0 && *cfg.f_value <= cfg.n, "f_value must be in [0, n]");
          }
          break;
        case SecretaryPolicy::kTime:
          need(cfg.k == 2, "time policy requires k=2");
          need(!cfg.f_value.has_value(), "f_value applies only to the threshold policy");
          need(cfg.mu.has_value(), "time policy requires mu");
          if (cfg.mu) need(*cfg.mu >= 0.0 && *cfg.mu < 1.0, "mu must be in [0,1)");
          break;
      }
      break;
    }
    case Problem::kMatroid: {
      need(cfg.k == 2, "matroid problem requires k=2");
      need(has_instance != has_kind, "matroid problem needs exactly one of instance file or kind");
      need(!cfg.mu.has_value() && !cfg.f_value.has_value(),
           "policy parameters apply only to the secretary problem");
      if (has_kind) {
        const std::string& kind = *cfg.instance_kind;
        if (kind == "uniform") {
          need(cfg.n >= 1, "uniform kind needs n >= 1");
          need(cfg.rank >= 1 && cfg.rank <= cfg.n, "uniform kind needs rank in [1, n]");
        } else if (kind == "graphic-complete") {
          need(cfg.num_vertices >= 2, "graphic-complete kind needs vertices >= 2");
        } else if (kind == "transversal-random") {
          need(cfg.n >= 1 && cfg.n_right >= 1, "transversal-random kind needs n and n-right >= 1");
          need(cfg.density > 0.0 && cfg.density <= 1.0, "density must be in (0, 1]");
        } else if (kind == "adversarial") {
          need(cfg.m >= 1, "adversarial kind needs m >= 1");
          need(cfg.eps > 0.0, "adversarial kind needs eps > 0");
        } else {
          problems.push_back("unknown matroid kind '" + kind + "'");
        }
      }
      break;
    }
    case Problem::kMatching: {
      need(cfg.k == 2, "matching problem requires k=2");
      need(!cfg.mu.has_value() && !cfg.f_value.has_value(),
           "policy parameters apply only to the secretary problem");
      if (has_instance) {
        need(!has_kind, "matching problem needs exactly one of instance file or kind");
      } else {
        need(!has_kind || *cfg.instance_kind == "bipartite-complete",
             "matching generator kind must be bipartite-complete");
        need(cfg.n >= 1 && cfg.n_right >= 1, "matching generator needs n and n-right >= 1");
      }
      break;
    }
    case Problem::kConcentration: {
      need(cfg.n >= 1, "n must be >= 1");
      break;
    }
  }

  if (!problems.empty()) {
    std::string msg = "invalid experiment config: ";
    for (std::size_t i = 0; i < problems.size(); ++i) {
      if (i) msg += "; ";
      msg += problems[i];
    }
    throw std::invalid_argument(msg);
  }
}

WeightedMatroidInstance build_matroid_instance(const ExperimentConfig& cfg) {
  if (cfg.instance_path) return load_matroid_instance(*cfg.instance_path);
  const std::uint64_t instance_seed = mix64(cfg.seed ^ 0x5EEDFACEULL);
  const std::string& kind = *cfg.instance_kind;
  if (kind == "uniform") return uniform_instance(cfg.n, cfg.rank, instance_seed);
  if (kind == "graphic-complete") return graphic_complete_instance(cfg.num_vertices, instance_seed);
  if (kind == "transversal-random") {
    return transversal_random_instance(cfg.n, cfg.n_right, cfg.density, instance_seed);
  }
  return adversarial_instance(cfg.m, cfg.eps, instance_seed);
}

}  // namespace

SimulationReport monte_carlo(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();

  SimulationReport report;
  report.k = cfg.k;
  report.trials = cfg.trials;
  report.seed = cfg.seed;

  std::function<double(std::int64_t)> trial;
  bool binary_statistic = false;

  // Matroid/matching assets referenced by the trial closures.
  WeightedMatroidInstance matroid_inst;
  double matroid_opt = 0.0;
  BipartiteInstance matching_inst;
  double matching_opt = 0.0;

  switch (cfg.problem) {
    case Problem::kSecretary: {
      report.problem = "secretary";
      report.n = cfg.n;
      binary_statistic = true;
      const RankedInstance inst = identity_ranks(cfg.n);
      switch (cfg.policy) {
        case SecretaryPolicy::kNoWait:
          report.policy = "no-wait";
          trial = [&cfg, inst](std::int64_t t) {
            const auto seq = gen_permutation_sequence(cfg.n, cfg.k, trial_seed(cfg.seed, t));
            return run_k_returning_no_wait(seq, inst).won ? 1.0 : 0.0;
          };
          if (cfg.k == 1) {
            report.analytic = 1.0 / static_cast<double>(cfg.n);
            report.source = "single-arrival-baseline";
            report.analytic_exact = true;
          } else if (cfg.k == 2) {
            report.analytic = no_wait_win_prob(cfg.n).to_double();
            report.source = "no-wait-closed-form";
            report.analytic_exact = true;
          } else if (cfg.k == 3 && cfg.n >= 2) {
            report.analytic = k3_win_prob(cfg.n);
            report.source = "k3-closed-form";
            report.analytic_exact = true;
          }
          break;
        case SecretaryPolicy::kThreshold: {
          report.policy = "threshold";
          const std::int64_t f = *cfg.f_value;
          report.param = std::to_string(f);
          trial = [&cfg, inst, f](std::int64_t t) {
            const auto seq = gen_permutation_sequence(cfg.n, cfg.k, trial_seed(cfg.seed, t));
            return run_threshold_policy(seq, inst, f).won ? 1.0 : 0.0;
          };
          if (f == 0) {
            report.analytic = no_wait_win_prob(cfg.n).to_double();
            report.source = "no-wait-closed-form";
            report.analytic_exact = true;
          }
          break;
        }
        case SecretaryPolicy::kTime: {
          report.policy = "time";
          const double mu = *cfg.mu;
          report.param = format_double(mu);
          trial = [&cfg, inst, mu](std::int64_t t) {
            const auto seq = gen_timed_sequence(cfg.n, cfg.k, trial_seed(cfg.seed, t));
            return run_time_policy(seq, inst, mu).won ? 1.0 : 0.0;
          };
          report.analytic = asymptotic_win(1.0 - mu);
          report.source = "asymptotic-limit";
          break;
        }
      }
      break;
    }
    case Problem::kMatroid: {
      report.problem = "matroid";
      matroid_inst = build_matroid_instance(cfg);
      report.n = matroid_inst.ground_size;
      matroid_opt = greedy_basis(matroid_inst).weight;
      if (matroid_opt <= 0.0) {
        throw std::invalid_argument(
            "invalid experiment config: matroid instance has a zero-weight optimum, the ratio "
            "statistic is undefined");
      }
      report.policy = cfg.continued_greedy ? "returning-greedy-continued" : "returning-greedy";
      const bool continued = cfg.continued_greedy;
      trial = [&cfg, &matroid_inst, matroid_opt, continued](std::int64_t t) {
        const auto seq = gen_permutation_sequence(matroid_inst.ground_size, 2,
                                                  trial_seed(cfg.seed, t));
        if (continued) {
          const auto result = run_matroid_secretary_continued(matroid_inst, seq);
          double weight = result.base.weight;
          for (const auto& [e, round] : result.added_after) weight += matroid_inst.weights[e];
          return weight / matroid_opt;
        }
        return run_matroid_secretary(matroid_inst, seq).weight / matroid_opt;
      };
      const double fn = static_cast<double>(matroid_inst.ground_size);
      report.analytic = fn / (2.0 * fn - 1.0);
      report.source = "ratio-lower-bound";
      break;
    }
    case Problem::kMatching: {
      report.problem = "matching";
      report.policy = cfg.first_arrivals_only ? "returning-matching-first-only"
                                              : "returning-matching";
      const ReturningMatchingOptions options{cfg.first_arrivals_only, false};
      if (cfg.instance_path) {
        matching_inst = load_bipartite_instance(*cfg.instance_path);
        report.n = matching_inst.n_left;
        matching_opt = max_weight_matching(matching_inst).weight;
        if (matching_opt <= 0.0) {
          throw std::invalid_argument(
              "invalid experiment config: instance admits only the empty matching, the ratio "
              "statistic is undefined");
        }
        trial = [&cfg, &matching_inst, matching_opt, options](std::int64_t t) {
          const auto seq = gen_permutation_sequence(matching_inst.n_left, 2,
                                                    trial_seed(cfg.seed, t));
          return run_returning_matching(matching_inst, seq, options).matching.weight /
                 matching_opt;
        };
      } else {
        report.n = cfg.n;
        trial = [&cfg, options](std::int64_t t) {
          const std::uint64_t ts = trial_seed(cfg.seed, t);
          const auto inst = complete_bipartite_instance(cfg.n, cfg.n_right, mix64(ts ^ 1));
          const auto seq = gen_permutation_sequence(cfg.n, 2, mix64(ts ^ 2));
          const double opt = max_weight_matching(inst).weight;
          return run_returning_matching(inst, seq, options).matching.weight / opt;
        };
      }
      report.analytic = 9.0 / 16.0;
      report.source = "ratio-lower-bound";
      break;
    }
    case Problem::kConcentration: {
      report.problem = "concentration";
      report.n = cfg.n;
      trial = [&cfg](std::int64_t t) {
        const auto seq = gen_permutation_sequence(cfg.n, 2, trial_seed(cfg.seed, t));
        // Items with both arrivals in the first half contribute +1 then -1.
        std::int64_t singles = 0;
        for (std::int64_t r = 0; r < cfg.n; ++r) {
          singles += seq.events[r].occurrence == 1 ? 1 : -1;
        }
        return static_cast<double>(singles);
      };
      const double fn = static_cast<double>(cfg.n);
      report.analytic = fn * fn / (2.0 * fn - 1.0);
      report.source = "expected-singleton-count";
      report.analytic_exact = true;
      break;
    }
  }

  double sum = 0.0;
  double sumsq = 0.0;
  run_blocks(cfg.trials, cfg.jobs, trial, sum, sumsq);

  const double trials = static_cast<double>(cfg.trials);
  report.mean = sum / trials;
  if (binary_statistic) {
    report.std_err = std::sqrt(report.mean * (1.0 - report.mean) / trials);
  } else if (cfg.trials > 1) {
    const double var = (sumsq - sum * sum / trials) / (trials - 1.0);
    report.std_err = std::sqrt(std::max(var, 0.0) / trials);
  }
  report.ci95 = 1.96 * report.std_err;

  if (report.analytic && report.analytic_exact && report.std_err > 0.0 &&
      std::abs(report.mean - *report.analytic) > 4.0 * report.std_err) {
    report.extras["analytic_deviation_sigma"] =
        std::abs(report.mean - *report.analytic) / report.std_err;
  }

  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string report_csv_header() {
  return "problem,n,k,policy,param,trials,mean,std_err,ci95,analytic,source,seed";
}

std::string render_report(const SimulationReport& r, ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    std::string row = r.problem + "," + std::to_string(r.n) + "," + std::to_string(r.k) + "," +
                      r.policy + "," + r.param + "," + std::to_string(r.trials) + "," +
                      format_double(r.mean) + "," + format_double(r.std_err) + "," +
                      format_double(r.ci95) + ",";
    if (r.analytic) row += format_double(*r.analytic);
    row += "," + r.source + "," + std::to_string(r.seed);
    return report_csv_header() + "\n" + row + "\n";
  }

  nlohmann::ordered_json j;
  j["problem"] = r.problem;
  j["n"] = r.n;
  j["k"] = r.k;
  j["policy"] = r.policy;
  j["param"] = r.param;
  j["trials"] = r.trials;
  j["mean"] = r.mean;
  j["std_err"] = r.std_err;
  j["ci95"] = r.ci95;
  if (r.analytic) {
    j["analytic"] = *r.analytic;
  } else {
    j["analytic"] = nullptr;
  }
  j["source"] = r.source;
  j["seed"] = r.seed;
  return j.dump(2) + "\n";
}

void write_report(const SimulationReport& report, const std::string& path, ReportFormat format) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << render_report(report, format);
}

}  // namespace stoplab
