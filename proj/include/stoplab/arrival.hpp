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

namespace stoplab {

using ItemId = std::int64_t;

// One arrival of one item. `occurrence` counts how many times this item has
// arrived so far (1-based); `time` is NaN in the untimed permutation model.
struct ArrivalEvent {
  ItemId item = 0;
  std::int64_t occurrence = 0;
  std::int64_t round = 0;
  double time = 0.0;
};

// A full stream of k*n arrivals: every item appears exactly k times, rounds
// run 1..k*n without gaps, and timed sequences are sorted by strictly
// increasing timestamps.
struct ArrivalSequence {
  std::int64_t n = 0;
  std::int64_t k = 0;
  bool timed = false;
  std::vector<ArrivalEvent> events;

  std::int64_t rounds() const { return n * k; }
};

// Uniformly random interleaving of k copies of each of n items; each of the
// (kn)!/(k!)^n distinguishable orders is equally likely. Deterministic given
// the seed.
ArrivalSequence gen_permutation_sequence(std::int64_t n, std::int64_t k, std::uint64_t seed);

// Continuous-time model: k independent uniform [0,1) timestamps per item,
// events sorted by time. Exact timestamp collisions are re-drawn.
ArrivalSequence gen_timed_sequence(std::int64_t n, std::int64_t k, std::uint64_t seed);

// Number of distinct items among the first r events, 1 <= r <= k*n.
std::int64_t distinct_count_prefix(const ArrivalSequence& seq, std::int64_t r);

// CSV with header "round,item,occurrence,time"; the time column is empty for
// untimed sequences.
std::string sequence_to_csv(const ArrivalSequence& seq);
void write_sequence_csv(const ArrivalSequence& seq, const std::string& path);

}  // namespace stoplab
