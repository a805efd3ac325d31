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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "stoplab/arrival.hpp"
#include "stoplab/random.hpp"

using namespace stoplab;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream out;
  out << f.rdbuf();
  return out.str();
}

ArrivalSequence make_sequence(std::int64_t n, std::int64_t k,
                              const std::vector<ItemId>& items) {
  ArrivalSequence seq{n, k, false, {}};
  std::vector<std::int64_t> seen(n, 0);
  for (std::size_t r = 0; r < items.size(); ++r) {
    seq.events.push_back(ArrivalEvent{items[r], ++seen[items[r]],
                                      static_cast<std::int64_t>(r) + 1, 0.0});
  }
  return seq;
}

}  // namespace

TEST_CASE("permutation sequence basic invariants") {
  for (const auto& [n, k] : std::vector<std::pair<std::int64_t, std::int64_t>>{
           {1, 2}, {2, 2}, {5, 3}, {7, 1}, {4, 4}}) {
    const ArrivalSequence seq = gen_permutation_sequence(n, k, 99);
    CHECK(seq.rounds() == n * k);
    CHECK(static_cast<std::int64_t>(seq.events.size()) == n * k);
    std::vector<std::int64_t> counts(n, 0);
    for (std::int64_t r = 0; r < seq.rounds(); ++r) {
      const auto& e = seq.events[r];
      CHECK(e.round == r + 1);
      CHECK(e.item >= 0);
      CHECK(e.item < n);
      CHECK(e.occurrence == counts[e.item] + 1);
      ++counts[e.item];
    }
    for (const auto c : counts) CHECK(c == k);
    CHECK(distinct_count_prefix(seq, seq.rounds()) == n);
  }
}

TEST_CASE("n=1 k=2 has the single distinguishable order") {
  const ArrivalSequence seq = gen_permutation_sequence(1, 2, 1234);
  REQUIRE(seq.events.size() == 2);
  CHECK(seq.events[0].item == 0);
  CHECK(seq.events[0].occurrence == 1);
  CHECK(seq.events[1].item == 0);
  CHECK(seq.events[1].occurrence == 2);
}

TEST_CASE("generation rejects empty dimensions") {
  CHECK_THROWS_AS(gen_permutation_sequence(0, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_permutation_sequence(3, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_timed_sequence(0, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_timed_sequence(1, 0, 1), std::invalid_argument);
}

TEST_CASE("n=2 k=2: the six distinguishable orders are equiprobable") {
  const std::int64_t trials = 600000;
  std::map<std::string, std::int64_t> counts;
  for (std::int64_t t = 0; t < trials; ++t) {
    const ArrivalSequence seq = gen_permutation_sequence(2, 2, trial_seed(20260808, t));
    std::string key;
    for (const auto& e : seq.events) key += static_cast<char>('0' + e.item);
    ++counts[key];
  }
  REQUIRE(counts.size() == 6);
  double chi2 = 0.0;
  const double expected = trials / 6.0;
  for (const auto& [key, c] : counts) {
    CHECK(std::abs(c / static_cast<double>(trials) - 1.0 / 6.0) < 0.005);
    chi2 += (c - expected) * (c - expected) / expected;
  }
  // 0.999 quantile of chi-square with 5 degrees of freedom.
  CHECK(chi2 < 20.515);
}

TEST_CASE("timed sequence: sorted, distinct, occurrence-consistent") {
  const ArrivalSequence seq = gen_timed_sequence(50, 3, 5);
  CHECK(seq.timed);
  std::vector<std::int64_t> counts(50, 0);
  for (std::int64_t r = 0; r < seq.rounds(); ++r) {
    const auto& e = seq.events[r];
    CHECK(e.time >= 0.0);
    CHECK(e.time < 1.0);
    if (r > 0) CHECK(e.time > seq.events[r - 1].time);
    CHECK(e.occurrence == ++counts[e.item]);
  }
}

TEST_CASE("timed sequence: timestamps are uniform (Kolmogorov-Smirnov)") {
  const ArrivalSequence seq = gen_timed_sequence(50000, 2, 314159);
  std::vector<double> times;
  times.reserve(seq.events.size());
  for (const auto& e : seq.events) times.push_back(e.time);
  // Already sorted ascending.
  const double n = static_cast<double>(times.size());
  double d = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double lo = i / n;
    const double hi = (i + 1) / n;
    d = std::max({d, std::abs(times[i] - lo), std::abs(times[i] - hi)});
  }
  // critical value at significance 0.001: sqrt(-ln(0.0005)/2)/sqrt(n)
  const double critical = std::sqrt(-std::log(0.0005) / 2.0) / std::sqrt(n);
  CHECK(d < critical);
}

TEST_CASE("timed sequence: early-interval counts match their expectations") {
  const std::int64_t n = 1000;
  const std::int64_t trials = 400;
  double both_before_half = 0.0;
  double distinct_by_x = 0.0;
  const double x = 0.272626;
  for (std::int64_t t = 0; t < trials; ++t) {
    const ArrivalSequence seq = gen_timed_sequence(n, 2, trial_seed(77, t));
    std::vector<double> first(n, 2.0), second(n, 2.0);
    for (const auto& e : seq.events) {
      (e.occurrence == 1 ? first : second)[e.item] = e.time;
    }
    for (std::int64_t i = 0; i < n; ++i) {
      if (second[i] < 0.5) both_before_half += 1.0;
      if (first[i] < x) distinct_by_x += 1.0;
    }
  }
  both_before_half /= trials;
  distinct_by_x /= trials;
  // Binomial(1000, 1/4): sd ~= 13.7, so the mean of 400 trials has SE ~= 0.69.
  CHECK(std::abs(both_before_half - 250.0) < 3.5);
  // Expected distinct by x: n * (x^2 + 2x(1-x)) ~= 470.96, SE ~= 0.79.
  const double expected = n * (x * x + 2 * x * (1 - x));
  CHECK(std::abs(distinct_by_x - expected) < 4.0);
}

TEST_CASE("distinct_count_prefix on a fixed sequence") {
  const ArrivalSequence seq = make_sequence(3, 2, {0, 1, 0, 2, 1, 2});
  CHECK(distinct_count_prefix(seq, 1) == 1);
  CHECK(distinct_count_prefix(seq, 2) == 2);
  CHECK(distinct_count_prefix(seq, 3) == 2);
  CHECK(distinct_count_prefix(seq, 4) == 3);
  CHECK(distinct_count_prefix(seq, 6) == 3);
  CHECK_THROWS_AS(distinct_count_prefix(seq, 0), std::invalid_argument);
  CHECK_THROWS_AS(distinct_count_prefix(seq, 7), std::invalid_argument);

  const ArrivalSequence single = gen_permutation_sequence(1, 2, 9);
  CHECK(distinct_count_prefix(single, 1) == 1);
  CHECK(distinct_count_prefix(single, 2) == 1);
}

TEST_CASE("distinct_count_prefix is monotone") {
  const ArrivalSequence seq = gen_permutation_sequence(20, 2, 1717);
  std::int64_t prev = 0;
  for (std::int64_t r = 1; r <= seq.rounds(); ++r) {
    const std::int64_t d = distinct_count_prefix(seq, r);
    CHECK(d >= prev);
    prev = d;
  }
}

TEST_CASE("identical seeds yield byte-identical sequences") {
  CHECK(sequence_to_csv(gen_permutation_sequence(12, 2, 555)) ==
        sequence_to_csv(gen_permutation_sequence(12, 2, 555)));
  CHECK(sequence_to_csv(gen_timed_sequence(12, 2, 555)) ==
        sequence_to_csv(gen_timed_sequence(12, 2, 555)));
  CHECK(sequence_to_csv(gen_permutation_sequence(12, 2, 555)) !=
        sequence_to_csv(gen_permutation_sequence(12, 2, 556)));
}

TEST_CASE("sequence CSV matches the committed goldens") {
  CHECK(sequence_to_csv(gen_permutation_sequence(3, 2, 42)) ==
        read_file(std::string(STOPLAB_GOLDEN_DIR) + "/sequence_n3_k2_seed42.csv"));
  CHECK(sequence_to_csv(gen_timed_sequence(2, 2, 7)) ==
        read_file(std::string(STOPLAB_GOLDEN_DIR) + "/sequence_timed_n2_k2_seed7.csv"));
}

TEST_CASE("csv header is stable") {
  const std::string csv = sequence_to_csv(gen_permutation_sequence(1, 1, 0));
  CHECK(csv.substr(0, csv.find('\n')) == "round,item,occurrence,time");
}
