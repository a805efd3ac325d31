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
#include <vector>

#include "stoplab/errors.hpp"
#include "stoplab/rational.hpp"

namespace stoplab {

struct EnumerationBudget {
  std::int64_t max_orders = 10'000'000;
};

enum class PolicyFamily {
  kNoWait,     // hire the best-seen item at its final arrival; any k
  kThreshold,  // integer observation threshold f_value; k=2 only
};

struct PolicySpec {
  PolicyFamily family = PolicyFamily::kNoWait;
  std::int64_t f_value = 0;
};

// Number of distinguishable arrival orders: (kn)! / (k!)^n.
BigInt count_distinct_orders(std::int64_t n, std::int64_t k);

// Exact win probability of a policy by exhaustive enumeration of every
// distinguishable multiset permutation of arrivals. Ranks are fixed to the
// identity; uniformity over rank assignments follows from order symmetry.
Rational enumerate_win_prob(std::int64_t n, std::int64_t k, const PolicySpec& policy,
                            const EnumerationBudget& budget = {});

// One exact win probability per parameter value. Threshold policies sweep
// f_value over [0, n]; the no-wait family has the single parameter 0.
std::vector<std::pair<std::int64_t, Rational>> enumerate_policy_table(
    std::int64_t n, std::int64_t k, PolicyFamily family, const EnumerationBudget& budget = {});

}  // namespace stoplab
