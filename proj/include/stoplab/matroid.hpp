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
#include <utility>
#include <vector>

#include "stoplab/arrival.hpp"

namespace stoplab {

enum class MatroidKind { kUniform, kGraphic, kTransversal };

// Weighted matroid over elements 0..ground_size-1 with pairwise-distinct
// positive weights. The independence oracle is kind-specific: cardinality
// bound (uniform), acyclicity (graphic), matchability into the right side
// (transversal).
struct WeightedMatroidInstance {
  MatroidKind kind = MatroidKind::kUniform;
  std::int64_t ground_size = 0;
  std::vector<double> weights;

  std::int64_t uniform_rank = 0;

  // Graphic: element i is the edge (edge_ends[i].first, edge_ends[i].second).
  std::int64_t num_vertices = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> edge_ends;

  // Transversal: element i is a left vertex with right-side neighbors.
  std::int64_t num_right = 0;
  std::vector<std::vector<std::int64_t>> adjacency;
};

bool is_independent(const WeightedMatroidInstance& inst, const std::vector<std::int64_t>& subset);

struct GreedyResult {
  std::vector<std::int64_t> basis;
  double weight = 0.0;
};

// Maximum-weight basis of the whole ground set (or of its restriction to the
// given elements): consider elements in decreasing weight, keep each one that
// preserves independence.
GreedyResult greedy_basis(const WeightedMatroidInstance& inst);
GreedyResult greedy_basis(const WeightedMatroidInstance& inst,
                          const std::vector<std::int64_t>& elements);

struct MatroidRunResult {
  std::vector<std::int64_t> selected;
  double weight = 0.0;
  std::vector<std::int64_t> once_arrived;  // E': exactly one arrival in rounds 1..n
};

// Observe the first n of the 2n rounds without selecting, then return the
// greedy basis of the elements that arrived exactly once. Every selected
// element still has its second arrival pending, so the choices are legal in
// the returning model. Requires k=2.
MatroidRunResult run_matroid_secretary(const WeightedMatroidInstance& inst,
                                       const ArrivalSequence& seq);

struct ContinuedGreedyResult {
  MatroidRunResult base;
  // Elements accepted by the diagnostic greedy continuation, with the round
  // at which each was added.
  std::vector<std::pair<std::int64_t, std::int64_t>> added_after;
};

// Diagnostic mode: after the round-n greedy, keep greedily adding arriving
// elements whenever independence allows. Not part of the standard algorithm.
ContinuedGreedyResult run_matroid_secretary_continued(const WeightedMatroidInstance& inst,
                                                      const ArrivalSequence& seq);

// Checks that the i-th heaviest greedy pick on `subset` weighs at least the
// i-th heaviest element of (full greedy basis) ∩ subset.
bool greedy_dominance_check(const WeightedMatroidInstance& inst,
                            const std::vector<std::int64_t>& subset);

// Graphic instance on vertices {u, v, w_1..w_m} with edges (u,v) of weight
// m+1, (u,w_i) in (eps, 2eps), and (v,w_i) in (2eps, 3eps); the heavy edge
// dominates the optimum while the light stars crowd it out of greedy
// continuations.
WeightedMatroidInstance adversarial_instance(std::int64_t m, double eps, std::uint64_t seed);

WeightedMatroidInstance uniform_instance(std::int64_t n, std::int64_t rank, std::uint64_t seed);
WeightedMatroidInstance graphic_complete_instance(std::int64_t num_vertices, std::uint64_t seed);
WeightedMatroidInstance transversal_random_instance(std::int64_t n_left, std::int64_t n_right,
                                                    double density, std::uint64_t seed);

WeightedMatroidInstance load_matroid_instance(const std::string& path);
void save_matroid_instance(const WeightedMatroidInstance& inst, const std::string& path);

// Exhaustive reference checks for small ground sets (2^ground_size subsets).
bool check_matroid_axioms(const WeightedMatroidInstance& inst);
GreedyResult brute_force_best_basis(const WeightedMatroidInstance& inst);

}  // namespace stoplab
