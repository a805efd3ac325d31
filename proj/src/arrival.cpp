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

#include "stoplab/arrival.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <utility>

#include "stoplab/random.hpp"

namespace stoplab {

namespace {

void check_dims(std::int64_t n, std::int64_t k) {
  if (n < 1) throw std::invalid_argument("arrival sequence: n must be >= 1");
  if (k < 1) throw std::invalid_argument("arrival sequence: k must be >= 1");
}

}  // namespace

ArrivalSequence gen_permutation_sequence(std::int64_t n, std::int64_t k, std::uint64_t seed) {
  check_dims(n, k);
  const std::int64_t rounds = n * k;

  std::vector<ItemId> items;
  items.reserve(rounds);
  for (ItemId item = 0; item < n; ++item) {
    for (std::int64_t j = 0; j < k; ++j) items.push_back(item);
  }

  Rng rng(seed);
  for (std::int64_t i = rounds - 1; i > 0; --i) {
    const auto j = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(items[i], items[j]);
  }

  ArrivalSequence seq{n, k, false, {}};
  seq.events.resize(rounds);
  std::vector<std::int64_t> seen(n, 0);
  for (std::int64_t r = 0; r < rounds; ++r) {
    const ItemId item = items[r];
    seq.events[r] = ArrivalEvent{item, ++seen[item], r + 1,
                                 std::numeric_limits<double>::quiet_NaN()};
  }
  return seq;
}

ArrivalSequence gen_timed_sequence(std::int64_t n, std::int64_t k, std::uint64_t seed) {
  check_dims(n, k);
  const std::int64_t rounds = n * k;

  Rng rng(seed);
  std::vector<std::pair<double, ItemId>> stamped(rounds);
  for (ItemId item = 0; item < n; ++item) {
    for (std::int64_t j = 0; j < k; ++j) stamped[item * k + j] = {rng.next_double(), item};
  }

  // Collisions have probability ~0 with 53-bit uniforms; re-draw the later
  // duplicate so the order stays unbiased.
  for (;;) {
    std::sort(stamped.begin(), stamped.end());
    bool clean = true;
    for (std::int64_t i = 1; i < rounds; ++i) {
      if (stamped[i].first == stamped[i - 1].first) {
        stamped[i].first = rng.next_double();
        clean = false;
      }
    }
    if (clean) break;
  }

  ArrivalSequence seq{n, k, true, {}};
  seq.events.resize(rounds);
  std::vector<std::int64_t> seen(n, 0);
  for (std::int64_t r = 0; r < rounds; ++r) {
    const auto& [time, item] = stamped[r];
    seq.events[r] = ArrivalEvent{item, ++seen[item], r + 1, time};
  }
  return seq;
}

std::int64_t distinct_count_prefix(const ArrivalSequence& seq, std::int64_t r) {
  if (r < 1 || r > seq.rounds()) {
    throw std::invalid_argument("distinct_count_prefix: round out of range [1, k*n]");
  }
  std::int64_t distinct = 0;
  for (std::int64_t i = 0; i < r; ++i) {
    if (seq.events[i].occurrence == 1) ++distinct;
  }
  return distinct;
}

std::string sequence_to_csv(const ArrivalSequence& seq) {
  std::string out = "round,item,occurrence,time\n";
  char buf[128];
  for (const auto& e : seq.events) {
    if (seq.timed) {
      std::snprintf(buf, sizeof(buf), "%lld,%lld,%lld,%.17g\n",
                    static_cast<long long>(e.round), static_cast<long long>(e.item),
                    static_cast<long long>(e.occurrence), e.time);
    } else {
      std::snprintf(buf, sizeof(buf), "%lld,%lld,%lld,\n", static_cast<long long>(e.round),
                    static_cast<long long>(e.item), static_cast<long long>(e.occurrence));
    }
    out += buf;
  }
  return out;
}

void write_sequence_csv(const ArrivalSequence& seq, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << sequence_to_csv(seq);
}

}  // namespace stoplab
