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
#include <string>
#include <vector>

#include "stoplab/arrival.hpp"

namespace stoplab {

struct BipartiteEdge {
  std::int64_t left = 0;
  std::int64_t right = 0;
  double weight = 0.0;
};

// Left vertices arrive online; right vertices are known upfront. Weights are
// non-negative and no (left, right) pair repeats.
struct BipartiteInstance {
  std::int64_t n_left = 0;
  std::int64_t n_right = 0;
  std::vector<BipartiteEdge> edges;
};

struct Matching {
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;  // (left, right)
  double weight = 0.0;
};

// Maximum-weight matching (not necessarily perfect; zero-weight edges are
// never forced). Deterministic: equal-weight alternatives resolve by lower
// left index, then lower right index.
Matching max_weight_matching(const BipartiteInstance& inst);
Matching max_weight_matching(const BipartiteInstance& inst,
                             const std::vector<std::int64_t>& left_subset);

struct MatchingTraceRow {
  std::int64_t round = 0;
  std::int64_t item = -1;
  std::int64_t occurrence = 0;
  std::int64_t matching_size = 0;
  double matching_weight = 0.0;
  std::int64_t added_left = -1;  // -1 when no edge was added this round
  std::int64_t added_right = -1;
};

struct ReturningMatchingOptions {
  // When set, improvement rounds after round n run only on first arrivals;
  // by default every round t > n is processed, second arrivals included.
  bool first_arrivals_only = false;
  bool record_trace = false;
};

struct ReturningMatchingResult {
  Matching matching;
  std::vector<std::int64_t> l_prime;      // left vertices with one arrival in rounds 1..n
  double round_n_weight = 0.0;            // weight of the matching right after round n
  std::int64_t n_right = 0;
  std::vector<MatchingTraceRow> trace;    // filled when record_trace is set
};

// After round n, match the once-arrived left vertices optimally; on each
// later round re-solve on everything seen so far, take the arriving vertex's
// edge in that solution, and add it when both endpoints are still free.
// Requires k=2.
ReturningMatchingResult run_returning_matching(const BipartiteInstance& inst,
                                               const ArrivalSequence& seq,
                                               const ReturningMatchingOptions& options = {});

// Fraction of right vertices unmatched in the running matching, per round
// t >= n. Requires a result recorded with trace.
std::vector<std::pair<std::int64_t, double>> unmatched_right_fraction(
    const ReturningMatchingResult& result);

struct ConcentrationStats {
  std::int64_t n = 0;
  std::int64_t trials = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double expected_mean = 0.0;        // n^2 / (2n - 1)
  double frac_outside[3] = {0, 0, 0};  // |s_n - n/2| > c*sqrt(n) for c in {2,4,8}
};

// Distribution of s_n, the number of items seen exactly once in the first n
// of 2n rounds.
ConcentrationStats concentration_stats(std::int64_t n, std::int64_t trials, std::uint64_t seed);

// Complete bipartite instance with i.i.d. uniform(0,1) weights.
BipartiteInstance complete_bipartite_instance(std::int64_t n_left, std::int64_t n_right,
                                              std::uint64_t seed);

BipartiteInstance load_bipartite_instance(const std::string& path);
void save_bipartite_instance(const BipartiteInstance& inst, const std::string& path);

std::string matching_trace_to_csv(const ReturningMatchingResult& result);

// Exhaustive reference solver for tiny instances.
Matching brute_force_matching(const BipartiteInstance& inst);

}  // namespace stoplab
