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
#include <optional>
#include <vector>

#include "stoplab/arrival.hpp"
#include "stoplab/oracle.hpp"
#include "stoplab/rational.hpp"

namespace stoplab {

// Total preference order over items: rank[item] in [1, n], 1 is best.
struct RankedInstance {
  std::int64_t n = 0;
  std::vector<std::int64_t> rank;
};

RankedInstance identity_ranks(std::int64_t n);

struct PolicyOutcome {
  std::optional<ItemId> hired;
  std::optional<std::int64_t> decision_round;
  std::optional<double> decision_time;
  bool won = false;
};

struct OptimalMuResult {
  double mu_star = 0.0;
  double x_star = 0.0;
  double win_prob = 0.0;
};

// Stopping rule with an integer observation threshold: track the best item
// seen so far (the candidate); when the arriving item is the candidate and
// more than f_value distinct items have arrived, hire it. If the candidate's
// second arrival falls inside the observation window it is skipped and can
// never be hired, so the run may end with no hire. Requires k=2.
PolicyOutcome run_threshold_policy(const ArrivalSequence& seq, const RankedInstance& inst,
                                   std::int64_t f_value);

// Continuous-time stopping rule: hire the candidate when it is observed at a
// time >= mu (inclusive). Requires a timed sequence with k=2.
PolicyOutcome run_time_policy(const ArrivalSequence& seq, const RankedInstance& inst, double mu);

// No observation phase: hire the current best-seen item at its k-th (final)
// arrival. For k=1 this degenerates to accepting the first item.
PolicyOutcome run_k_returning_no_wait(const ArrivalSequence& seq, const RankedInstance& inst);

// Exact win probability of the no-waiting rule for k=2: (2n+1)/(3n).
Rational no_wait_win_prob(std::int64_t n);

// Exact win probability of the no-waiting rule for k=3:
//   prod_{j=2..n} (1 - 6/((3j-2)(3j-1)(3j))),
// tending to ~0.928524 as n grows. Requires n >= 2 (use the enumeration
// oracle for n=1).
double k3_win_prob(std::int64_t n);

// Finite series lower bound on the k=2 win probability of the time rule:
//   2*mu*(1-mu) + sum_{i=1..k} (1-mu)^{2i} (mu^2 + 4*mu*i - 2*mu^2*i)/(3i)
//   + (2/3)(1-mu)^{2k+1}.
double win_lower_bound(double mu, std::int64_t k_terms);

// Large-n limit of the series with x = 1-mu:
//   g(x) = 2x - (4/3)x^2 - (1/3)(1-x)^2 ln(1-x^2).
double asymptotic_win(double x);

// Maximizes asymptotic_win over (0,1) by golden-section bracketing followed
// by bisection on the central-difference derivative.
OptimalMuResult optimize_mu(double tolerance);

// Probability that all k arrivals of one fixed item precede all k arrivals of
// another: 1 / C(2k, k).
Rational pairwise_dominance_prob(std::int64_t k);

struct ThresholdTable {
  std::vector<std::pair<std::int64_t, Rational>> rows;  // (f_value, win probability)
  std::int64_t argmax = 0;
};

// Exact win probability of the threshold rule for every f_value in [0, n],
// by exhaustive enumeration of arrival orders.
ThresholdTable exact_threshold_table(std::int64_t n, const EnumerationBudget& budget = {});

}  // namespace stoplab
