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

#include "stoplab/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "stoplab/arrival.hpp"
#include "stoplab/secretary.hpp"

namespace stoplab {

namespace {

void check_policy(std::int64_t n, std::int64_t k, const PolicySpec& policy) {
  if (n < 1 || k < 1) throw std::invalid_argument("enumeration: n and k must be >= 1");
  if (policy.family == PolicyFamily::kThreshold) {
    if (k != 2) throw std::invalid_argument("threshold policy enumeration requires k=2");
    if (policy.f_value < 0 || policy.f_value > n) {
      throw std::invalid_argument("enumeration: f_value must be in [0, n]");
    }
  }
}

// Rewrites `seq` in place to carry the given item order. The k arrivals of
// one item are indistinguishable, so occurrence counts are recomputed.
void fill_sequence(const std::vector<ItemId>& items, ArrivalSequence& seq,
                   std::vector<std::int64_t>& seen) {
  std::fill(seen.begin(), seen.end(), 0);
  for (std::size_t r = 0; r < items.size(); ++r) {
    const ItemId item = items[r];
    seq.events[r] =
        ArrivalEvent{item, ++seen[item], static_cast<std::int64_t>(r) + 1,
                     std::numeric_limits<double>::quiet_NaN()};
  }
}

PolicyOutcome run_policy(const PolicySpec& policy, const ArrivalSequence& seq,
                         const RankedInstance& inst) {
  switch (policy.family) {
    case PolicyFamily::kNoWait:
      return run_k_returning_no_wait(seq, inst);
    case PolicyFamily::kThreshold:
      return run_threshold_policy(seq, inst, policy.f_value);
  }
  throw std::logic_error("unknown policy family");
}

}  // namespace

BigInt count_distinct_orders(std::int64_t n, std::int64_t k) {
  if (n < 1 || k < 1) throw std::invalid_argument("count_distinct_orders: n and k must be >= 1");
  BigInt denom = 1;
  const BigInt kfac = factorial(k);
  for (std::int64_t i = 0; i < n; ++i) denom *= kfac;
  return factorial(n * k) / denom;
}

Rational enumerate_win_prob(std::int64_t n, std::int64_t k, const PolicySpec& policy,
                            const EnumerationBudget& budget) {
  check_policy(n, k, policy);
  const BigInt total_orders = count_distinct_orders(n, k);
  if (total_orders > budget.max_orders) throw BudgetExceededError(total_orders, budget.max_orders);

  std::vector<ItemId> items;
  items.reserve(n * k);
  for (ItemId item = 0; item < n; ++item) {
    for (std::int64_t j = 0; j < k; ++j) items.push_back(item);
  }

  const RankedInstance inst = identity_ranks(n);
  ArrivalSequence seq{n, k, false, {}};
  seq.events.resize(n * k);
  std::vector<std::int64_t> seen(n);

  std::int64_t wins = 0;
  std::int64_t total = 0;
  do {
    fill_sequence(items, seq, seen);
    if (run_policy(policy, seq, inst).won) ++wins;
    ++total;
  } while (std::next_permutation(items.begin(), items.end()));

  if (BigInt(total) != total_orders) throw std::logic_error("enumeration count mismatch");
  return {BigInt(wins), BigInt(total)};
}

std::vector<std::pair<std::int64_t, Rational>> enumerate_policy_table(
    std::int64_t n, std::int64_t k, PolicyFamily family, const EnumerationBudget& budget) {
  if (family == PolicyFamily::kNoWait) {
    return {{0, enumerate_win_prob(n, k, PolicySpec{family, 0}, budget)}};
  }

  check_policy(n, k, PolicySpec{family, 0});
  const BigInt total_orders = count_distinct_orders(n, k);
  if (total_orders > budget.max_orders) throw BudgetExceededError(total_orders, budget.max_orders);

  std::vector<ItemId> items;
  items.reserve(n * k);
  for (ItemId item = 0; item < n; ++item) {
    for (std::int64_t j = 0; j < k; ++j) items.push_back(item);
  }

  const RankedInstance inst = identity_ranks(n);
  ArrivalSequence seq{n, k, false, {}};
  seq.events.resize(n * k);
  std::vector<std::int64_t> seen(n);

  std::vector<std::int64_t> wins(n + 1, 0);
  std::int64_t total = 0;
  do {
    fill_sequence(items, seq, seen);
    for (std::int64_t f = 0; f <= n; ++f) {
      if (run_threshold_policy(seq, inst, f).won) ++wins[f];
    }
    ++total;
  } while (std::next_permutation(items.begin(), items.end()));

  std::vector<std::pair<std::int64_t, Rational>> table;
  table.reserve(n + 1);
  for (std::int64_t f = 0; f <= n; ++f) {
    table.emplace_back(f, Rational(BigInt(wins[f]), BigInt(total)));
  }
  return table;
}

}  // namespace stoplab
