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
#include <cstdio>
#include <set>
#include <vector>

#include "stoplab/arrival.hpp"
#include "stoplab/matroid.hpp"
#include "stoplab/random.hpp"

using namespace stoplab;

namespace {

WeightedMatroidInstance triangle(double w0, double w1, double w2) {
  WeightedMatroidInstance inst;
  inst.kind = MatroidKind::kGraphic;
  inst.ground_size = 3;
  inst.num_vertices = 3;
  inst.edge_ends = {{0, 1}, {1, 2}, {2, 0}};
  inst.weights = {w0, w1, w2};
  return inst;
}

WeightedMatroidInstance random_instance_of_kind(MatroidKind kind, Rng& rng) {
  const std::uint64_t seed = rng.next_u64();
  switch (kind) {
    case MatroidKind::kUniform: {
      const std::int64_t n = 2 + static_cast<std::int64_t>(rng.next_below(7));
      return uniform_instance(n, static_cast<std::int64_t>(rng.next_below(n + 1)), seed);
    }
    case MatroidKind::kGraphic: {
      // K3 or K4 restricted to at most 8 edges by dropping extras.
      const std::int64_t v = 3 + static_cast<std::int64_t>(rng.next_below(2));
      WeightedMatroidInstance inst = graphic_complete_instance(v, seed);
      return inst;
    }
    case MatroidKind::kTransversal: {
      const std::int64_t nl = 2 + static_cast<std::int64_t>(rng.next_below(6));
      const std::int64_t nr = 1 + static_cast<std::int64_t>(rng.next_below(6));
      return transversal_random_instance(nl, nr, 0.3 + 0.5 * rng.next_double(), seed);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("independence oracles on fixed instances") {
  const auto tri = triangle(3.0, 2.0, 1.0);
  CHECK(is_independent(tri, {}));
  CHECK(is_independent(tri, {0, 1}));
  CHECK(is_independent(tri, {0, 2}));
  CHECK_FALSE(is_independent(tri, {0, 1, 2}));

  const auto uniform = uniform_instance(4, 2, 1);
  CHECK(is_independent(uniform, {}));
  CHECK(is_independent(uniform, {0, 3}));
  CHECK_FALSE(is_independent(uniform, {0, 1, 2}));

  CHECK_THROWS_AS(is_independent(uniform, {0, 4}), std::invalid_argument);
  CHECK_THROWS_AS(is_independent(uniform, {-1}), std::invalid_argument);
  CHECK_THROWS_AS(is_independent(uniform, {1, 1}), std::invalid_argument);
}

TEST_CASE("greedy basis on fixed instances") {
  const auto tri = triangle(3.0, 2.0, 1.0);
  const GreedyResult result = greedy_basis(tri);
  CHECK(result.weight == doctest::Approx(5.0));
  CHECK(std::set<std::int64_t>(result.basis.begin(), result.basis.end()) ==
        std::set<std::int64_t>{0, 1});

  const auto uniform = uniform_instance(6, 3, 2);
  const GreedyResult top = greedy_basis(uniform);
  std::vector<double> weights = uniform.weights;
  std::sort(weights.begin(), weights.end(), std::greater<>());
  CHECK(top.weight == doctest::Approx(weights[0] + weights[1] + weights[2]));
}

TEST_CASE("greedy equals brute force on complete graphs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto k4 = graphic_complete_instance(4, seed);  // 16 spanning trees
    CHECK(greedy_basis(k4).weight == doctest::Approx(brute_force_best_basis(k4).weight));
  }
}

TEST_CASE("matroid axioms hold exhaustively for every kind") {
  Rng rng(2026);
  for (const MatroidKind kind :
       {MatroidKind::kUniform, MatroidKind::kGraphic, MatroidKind::kTransversal}) {
    for (int i = 0; i < 50; ++i) {
      const auto inst = random_instance_of_kind(kind, rng);
      REQUIRE(inst.ground_size <= 8);
      CHECK(check_matroid_axioms(inst));
      CHECK(greedy_basis(inst).weight == doctest::Approx(brute_force_best_basis(inst).weight));
    }
  }
}

TEST_CASE("returning matroid secretary on a single element") {
  const auto inst = uniform_instance(1, 1, 3);
  const auto seq = gen_permutation_sequence(1, 2, 4);
  const MatroidRunResult result = run_matroid_secretary(inst, seq);
  CHECK(result.once_arrived == std::vector<std::int64_t>{0});
  CHECK(result.selected == std::vector<std::int64_t>{0});
  CHECK(result.weight == doctest::Approx(inst.weights[0]));
}

TEST_CASE("returning matroid secretary validation") {
  const auto inst = uniform_instance(3, 2, 5);
  CHECK_THROWS_AS(run_matroid_secretary(inst, gen_permutation_sequence(3, 3, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_matroid_secretary(inst, gen_permutation_sequence(4, 2, 1)),
                  std::invalid_argument);
}

TEST_CASE("once-arrived membership probability is n/(2n-1)") {
  const std::int64_t n = 2;
  const std::int64_t trials = 1000000;
  const auto inst = uniform_instance(n, 1, 6);
  std::int64_t member = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const auto seq = gen_permutation_sequence(n, 2, trial_seed(606, t));
    const auto result = run_matroid_secretary(inst, seq);
    member += std::count(result.once_arrived.begin(), result.once_arrived.end(), 0);
  }
  CHECK(std::abs(static_cast<double>(member) / trials - 2.0 / 3.0) < 0.005);
}

TEST_CASE("selected set is legal: independent with second arrivals pending") {
  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    const auto inst = random_instance_of_kind(MatroidKind::kGraphic, rng);
    const auto seq = gen_permutation_sequence(inst.ground_size, 2, rng.next_u64());
    const auto result = run_matroid_secretary(inst, seq);
    CHECK(is_independent(inst, result.selected));
    for (const std::int64_t e : result.selected) {
      std::int64_t second_round = 0;
      for (const auto& ev : seq.events) {
        if (ev.item == e && ev.occurrence == 2) second_round = ev.round;
      }
      CHECK(second_round > inst.ground_size);
    }
  }
}

TEST_CASE("rank-1 expected ratio clears the n/(2n-1) bound") {
  const std::int64_t n = 5;
  const std::int64_t trials = 200000;
  const auto inst = uniform_instance(n, 1, 7);
  const double optimum = greedy_basis(inst).weight;
  double sum = 0.0;
  double sumsq = 0.0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const auto seq = gen_permutation_sequence(n, 2, trial_seed(707, t));
    const double ratio = run_matroid_secretary(inst, seq).weight / optimum;
    sum += ratio;
    sumsq += ratio * ratio;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sumsq - sum * sum / trials) / (trials - 1.0) / trials);
  CHECK(mean >= 5.0 / 9.0 - 3 * se);
}

TEST_CASE("greedy dominance against the optimal basis restriction") {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const auto inst = graphic_complete_instance(4, rng.next_u64());
    std::vector<std::int64_t> subset;
    for (std::int64_t e = 0; e < inst.ground_size; ++e) {
      if (rng.next_below(2) == 0) subset.push_back(e);
    }
    CHECK(greedy_dominance_check(inst, subset));
  }
  // Full ground set: greedy dominates itself.
  const auto inst = graphic_complete_instance(5, 8);
  std::vector<std::int64_t> all(inst.ground_size);
  for (std::int64_t e = 0; e < inst.ground_size; ++e) all[e] = e;
  CHECK(greedy_dominance_check(inst, all));

  // Uniform rank 2 with the heaviest element removed: the greedy top pick on
  // the rest still dominates the restricted optimum.
  const auto uniform = uniform_instance(4, 2, 9);
  std::int64_t heaviest = 0;
  for (std::int64_t e = 1; e < 4; ++e) {
    if (uniform.weights[e] > uniform.weights[heaviest]) heaviest = e;
  }
  std::vector<std::int64_t> rest;
  for (std::int64_t e = 0; e < 4; ++e) {
    if (e != heaviest) rest.push_back(e);
  }
  CHECK(greedy_dominance_check(uniform, rest));
}

TEST_CASE("adversarial instance shape and optimum") {
  const auto tiny = adversarial_instance(1, 0.01, 11);
  CHECK(tiny.ground_size == 3);
  CHECK(tiny.weights[0] == doctest::Approx(2.0));
  const auto basis = greedy_basis(tiny);
  CHECK(std::count(basis.basis.begin(), basis.basis.end(), 0) == 1);

  const auto inst = adversarial_instance(20, 1e-3, 12);
  CHECK(inst.ground_size == 41);
  for (std::int64_t i = 1; i <= 20; ++i) {
    CHECK(inst.weights[i] > 1e-3);
    CHECK(inst.weights[i] < 2e-3);
    CHECK(inst.weights[20 + i] > 2e-3);
    CHECK(inst.weights[20 + i] < 3e-3);
  }
  // Optimal basis: the heavy edge plus the heavier arm of every star.
  double expected = 21.0;
  for (std::int64_t i = 21; i <= 40; ++i) expected += inst.weights[i];
  const auto best = greedy_basis(inst);
  CHECK(best.weight == doctest::Approx(expected));
  CHECK(std::count(best.basis.begin(), best.basis.end(), 0) == 1);

  CHECK_THROWS_AS(adversarial_instance(0, 0.01, 1), std::invalid_argument);
  CHECK_THROWS_AS(adversarial_instance(3, 0.0, 1), std::invalid_argument);
}

TEST_CASE("continued greedy rarely recovers the heavy edge") {
  const std::int64_t m = 20;
  const auto inst = adversarial_instance(m, 1e-3, 13);
  std::int64_t conditioned = 0;
  std::int64_t added = 0;
  std::int64_t t = 0;
  while (conditioned < 3000) {
    const auto seq = gen_permutation_sequence(inst.ground_size, 2, trial_seed(1313, t++));
    const auto result = run_matroid_secretary_continued(inst, seq);
    const bool heavy_in_once = std::count(result.base.once_arrived.begin(),
                                          result.base.once_arrived.end(), 0) > 0;
    if (heavy_in_once) continue;
    ++conditioned;
    for (const auto& [e, round] : result.added_after) added += e == 0;
  }
  // Failure to add should happen with probability >= 1 - 2*(3/4)^m; with
  // m=20 the add rate stays far below 5%.
  const double rate = static_cast<double>(added) / conditioned;
  CHECK(rate <= 2 * std::pow(0.75, m) + 0.03);
}

TEST_CASE("continued greedy additions stay independent") {
  Rng rng(47);
  for (int i = 0; i < 50; ++i) {
    const auto inst = adversarial_instance(4, 1e-3, rng.next_u64());
    const auto seq = gen_permutation_sequence(inst.ground_size, 2, rng.next_u64());
    const auto result = run_matroid_secretary_continued(inst, seq);
    std::vector<std::int64_t> full = result.base.selected;
    for (const auto& [e, round] : result.added_after) full.push_back(e);
    CHECK(is_independent(inst, full));
  }
}

TEST_CASE("instance files round-trip") {
  const std::string dir = "/tmp";
  const auto graphic = graphic_complete_instance(4, 21);
  save_matroid_instance(graphic, dir + "/stoplab_graphic.txt");
  const auto graphic2 = load_matroid_instance(dir + "/stoplab_graphic.txt");
  CHECK(graphic2.kind == MatroidKind::kGraphic);
  CHECK(graphic2.ground_size == graphic.ground_size);
  CHECK(graphic2.edge_ends == graphic.edge_ends);
  for (std::int64_t e = 0; e < graphic.ground_size; ++e) {
    CHECK(graphic2.weights[e] == doctest::Approx(graphic.weights[e]).epsilon(1e-15));
  }

  const auto uniform = uniform_instance(5, 2, 22);
  save_matroid_instance(uniform, dir + "/stoplab_uniform.txt");
  const auto uniform2 = load_matroid_instance(dir + "/stoplab_uniform.txt");
  CHECK(uniform2.kind == MatroidKind::kUniform);
  CHECK(uniform2.uniform_rank == 2);

  const auto transversal = transversal_random_instance(4, 3, 0.6, 23);
  save_matroid_instance(transversal, dir + "/stoplab_transversal.txt");
  const auto transversal2 = load_matroid_instance(dir + "/stoplab_transversal.txt");
  CHECK(transversal2.kind == MatroidKind::kTransversal);
  CHECK(transversal2.adjacency == transversal.adjacency);

  CHECK_THROWS(load_matroid_instance("/nonexistent/file.txt"));
  std::FILE* f = std::fopen("/tmp/stoplab_bad.txt", "w");
  std::fputs("nonsense 3\n", f);
  std::fclose(f);
  CHECK_THROWS(load_matroid_instance("/tmp/stoplab_bad.txt"));
}

TEST_CASE("generator validation") {
  CHECK_THROWS_AS(uniform_instance(0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(uniform_instance(3, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(graphic_complete_instance(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(transversal_random_instance(0, 3, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(transversal_random_instance(3, 3, 0.0, 1), std::invalid_argument);
}
