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

#include "stoplab/matroid.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "stoplab/random.hpp"

namespace stoplab {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::int64_t n) : parent_(n) {
    for (std::int64_t i = 0; i < n; ++i) parent_[i] = i;
  }
  std::int64_t find(std::int64_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // Returns false if x and y were already connected.
  bool unite(std::int64_t x, std::int64_t y) {
    const std::int64_t rx = find(x);
    const std::int64_t ry = find(y);
    if (rx == ry) return false;
    parent_[rx] = ry;
    return true;
  }

 private:
  std::vector<std::int64_t> parent_;
};

// Incremental transversal-matroid oracle: elements are added one at a time
// and kept iff the bipartite matching can be augmented (Kuhn's algorithm).
class TransversalMatcher {
 public:
  TransversalMatcher(const WeightedMatroidInstance& inst)
      : inst_(inst), match_right_(inst.num_right, -1) {}

  bool try_add(std::int64_t element) {
    visited_.assign(inst_.num_right, false);
    return augment(element);
  }

 private:
  bool augment(std::int64_t element) {
    for (const std::int64_t r : inst_.adjacency[element]) {
      if (visited_[r]) continue;
      visited_[r] = true;
      if (match_right_[r] < 0 || augment(match_right_[r])) {
        match_right_[r] = element;
        return true;
      }
    }
    return false;
  }

  const WeightedMatroidInstance& inst_;
  std::vector<std::int64_t> match_right_;
  std::vector<char> visited_;
};

void check_elements(const WeightedMatroidInstance& inst, const std::vector<std::int64_t>& subset) {
  std::vector<char> seen(inst.ground_size, 0);
  for (const std::int64_t e : subset) {
    if (e < 0 || e >= inst.ground_size) {
      throw std::invalid_argument("matroid: element id out of range");
    }
    if (seen[e]) throw std::invalid_argument("matroid: duplicate element in subset");
    seen[e] = 1;
  }
}

// Shared greedy core: elements must already be sorted by decreasing weight.
GreedyResult greedy_over(const WeightedMatroidInstance& inst,
                         const std::vector<std::int64_t>& ordered) {
  GreedyResult result;
  switch (inst.kind) {
    case MatroidKind::kUniform: {
      for (const std::int64_t e : ordered) {
        if (static_cast<std::int64_t>(result.basis.size()) >= inst.uniform_rank) break;
        result.basis.push_back(e);
        result.weight += inst.weights[e];
      }
      break;
    }
    case MatroidKind::kGraphic: {
      UnionFind uf(inst.num_vertices);
      for (const std::int64_t e : ordered) {
        if (uf.unite(inst.edge_ends[e].first, inst.edge_ends[e].second)) {
          result.basis.push_back(e);
          result.weight += inst.weights[e];
        }
      }
      break;
    }
    case MatroidKind::kTransversal: {
      TransversalMatcher matcher(inst);
      for (const std::int64_t e : ordered) {
        if (matcher.try_add(e)) {
          result.basis.push_back(e);
          result.weight += inst.weights[e];
        }
      }
      break;
    }
  }
  return result;
}

std::vector<std::int64_t> sort_by_weight_desc(const WeightedMatroidInstance& inst,
                                              std::vector<std::int64_t> elements) {
  std::sort(elements.begin(), elements.end(), [&](std::int64_t a, std::int64_t b) {
    if (inst.weights[a] != inst.weights[b]) return inst.weights[a] > inst.weights[b];
    return a < b;
  });
  return elements;
}

void draw_distinct_weights(std::vector<double>& weights, Rng& rng, double lo, double hi,
                           std::size_t begin, std::size_t end, std::set<double>& used) {
  for (std::size_t i = begin; i < end; ++i) {
    double w;
    do {
      w = lo + (hi - lo) * rng.next_double();
    } while (!used.insert(w).second);
    weights[i] = w;
  }
}

void check_instance(const WeightedMatroidInstance& inst) {
  if (inst.ground_size < 1) throw std::invalid_argument("matroid: empty ground set");
  if (static_cast<std::int64_t>(inst.weights.size()) != inst.ground_size) {
    throw std::invalid_argument("matroid: weight count disagrees with ground size");
  }
  std::set<double> distinct(inst.weights.begin(), inst.weights.end());
  if (static_cast<std::int64_t>(distinct.size()) != inst.ground_size) {
    throw std::invalid_argument("matroid: weights must be pairwise distinct");
  }
}

}  // namespace

bool is_independent(const WeightedMatroidInstance& inst, const std::vector<std::int64_t>& subset) {
  check_elements(inst, subset);
  switch (inst.kind) {
    case MatroidKind::kUniform:
      return static_cast<std::int64_t>(subset.size()) <= inst.uniform_rank;
    case MatroidKind::kGraphic: {
      UnionFind uf(inst.num_vertices);
      for (const std::int64_t e : subset) {
        if (!uf.unite(inst.edge_ends[e].first, inst.edge_ends[e].second)) return false;
      }
      return true;
    }
    case MatroidKind::kTransversal: {
      TransversalMatcher matcher(inst);
      for (const std::int64_t e : subset) {
        if (!matcher.try_add(e)) return false;
      }
      return true;
    }
  }
  throw std::logic_error("unknown matroid kind");
}

GreedyResult greedy_basis(const WeightedMatroidInstance& inst) {
  std::vector<std::int64_t> all(inst.ground_size);
  for (std::int64_t i = 0; i < inst.ground_size; ++i) all[i] = i;
  return greedy_over(inst, sort_by_weight_desc(inst, std::move(all)));
}

GreedyResult greedy_basis(const WeightedMatroidInstance& inst,
                          const std::vector<std::int64_t>& elements) {
  check_elements(inst, elements);
  return greedy_over(inst, sort_by_weight_desc(inst, elements));
}

MatroidRunResult run_matroid_secretary(const WeightedMatroidInstance& inst,
                                       const ArrivalSequence& seq) {
  if (seq.k != 2) throw std::invalid_argument("returning matroid secretary requires k=2");
  if (seq.n != inst.ground_size) {
    throw std::invalid_argument("returning matroid secretary: sequence does not cover ground set");
  }
  std::vector<std::int64_t> count(inst.ground_size, 0);
  for (std::int64_t r = 0; r < seq.n; ++r) ++count[seq.events[r].item];

  MatroidRunResult result;
  for (std::int64_t e = 0; e < inst.ground_size; ++e) {
    if (count[e] == 1) result.once_arrived.push_back(e);
  }
  GreedyResult greedy = greedy_basis(inst, result.once_arrived);
  result.selected = std::move(greedy.basis);
  result.weight = greedy.weight;
  return result;
}

ContinuedGreedyResult run_matroid_secretary_continued(const WeightedMatroidInstance& inst,
                                                      const ArrivalSequence& seq) {
  ContinuedGreedyResult result;
  result.base = run_matroid_secretary(inst, seq);

  std::vector<char> in_set(inst.ground_size, 0);
  std::vector<std::int64_t> selected = result.base.selected;
  for (const std::int64_t e : selected) in_set[e] = 1;

  for (std::int64_t r = seq.n; r < seq.rounds(); ++r) {
    const std::int64_t e = seq.events[r].item;
    if (in_set[e]) continue;
    selected.push_back(e);
    if (is_independent(inst, selected)) {
      in_set[e] = 1;
      result.added_after.emplace_back(e, seq.events[r].round);
    } else {
      selected.pop_back();
    }
  }
  return result;
}

bool greedy_dominance_check(const WeightedMatroidInstance& inst,
                            const std::vector<std::int64_t>& subset) {
  check_elements(inst, subset);
  const GreedyResult on_subset = greedy_basis(inst, subset);
  const GreedyResult full = greedy_basis(inst);

  std::vector<char> in_subset(inst.ground_size, 0);
  for (const std::int64_t e : subset) in_subset[e] = 1;
  std::vector<std::int64_t> restricted;
  for (const std::int64_t e : full.basis) {
    if (in_subset[e]) restricted.push_back(e);
  }

  const auto greedy_sorted = sort_by_weight_desc(inst, on_subset.basis);
  const auto restricted_sorted = sort_by_weight_desc(inst, std::move(restricted));
  if (greedy_sorted.size() < restricted_sorted.size()) return false;
  for (std::size_t i = 0; i < restricted_sorted.size(); ++i) {
    if (inst.weights[greedy_sorted[i]] < inst.weights[restricted_sorted[i]]) return false;
  }
  return true;
}

WeightedMatroidInstance adversarial_instance(std::int64_t m, double eps, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("adversarial_instance: m must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("adversarial_instance: eps must be > 0");

  WeightedMatroidInstance inst;
  inst.kind = MatroidKind::kGraphic;
  inst.ground_size = 2 * m + 1;
  inst.num_vertices = m + 2;  // u=0, v=1, w_i=2..m+1
  inst.weights.resize(inst.ground_size);
  inst.edge_ends.resize(inst.ground_size);

  inst.edge_ends[0] = {0, 1};
  inst.weights[0] = static_cast<double>(m + 1);
  std::set<double> used{inst.weights[0]};

  Rng rng(seed);
  for (std::int64_t i = 0; i < m; ++i) {
    inst.edge_ends[1 + i] = {0, 2 + i};
    inst.edge_ends[1 + m + i] = {1, 2 + i};
  }
  draw_distinct_weights(inst.weights, rng, eps, 2 * eps, 1, static_cast<std::size_t>(1 + m), used);
  draw_distinct_weights(inst.weights, rng, 2 * eps, 3 * eps, static_cast<std::size_t>(1 + m),
                        static_cast<std::size_t>(1 + 2 * m), used);
  return inst;
}

WeightedMatroidInstance uniform_instance(std::int64_t n, std::int64_t rank, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("uniform_instance: n must be >= 1");
  if (rank < 0 || rank > n) throw std::invalid_argument("uniform_instance: rank must be in [0, n]");
  WeightedMatroidInstance inst;
  inst.kind = MatroidKind::kUniform;
  inst.ground_size = n;
  inst.uniform_rank = rank;
  inst.weights.resize(n);
  Rng rng(seed);
  std::set<double> used;
  draw_distinct_weights(inst.weights, rng, 0.0, 1.0, 0, static_cast<std::size_t>(n), used);
  return inst;
}

WeightedMatroidInstance graphic_complete_instance(std::int64_t num_vertices, std::uint64_t seed) {
  if (num_vertices < 2) throw std::invalid_argument("graphic_complete_instance: need >= 2 vertices");
  WeightedMatroidInstance inst;
  inst.kind = MatroidKind::kGraphic;
  inst.num_vertices = num_vertices;
  for (std::int64_t u = 0; u < num_vertices; ++u) {
    for (std::int64_t v = u + 1; v < num_vertices; ++v) inst.edge_ends.emplace_back(u, v);
  }
  inst.ground_size = static_cast<std::int64_t>(inst.edge_ends.size());
  inst.weights.resize(inst.ground_size);
  Rng rng(seed);
  std::set<double> used;
  draw_distinct_weights(inst.weights, rng, 0.0, 1.0, 0, inst.edge_ends.size(), used);
  return inst;
}

WeightedMatroidInstance transversal_random_instance(std::int64_t n_left, std::int64_t n_right,
                                                    double density, std::uint64_t seed) {
  if (n_left < 1 || n_right < 1) {
    throw std::invalid_argument("transversal_random_instance: sizes must be >= 1");
  }
  if (!(density > 0.0 && density <= 1.0)) {
    throw std::invalid_argument("transversal_random_instance: density must be in (0, 1]");
  }
  WeightedMatroidInstance inst;
  inst.kind = MatroidKind::kTransversal;
  inst.ground_size = n_left;
  inst.num_right = n_right;
  inst.adjacency.resize(n_left);
  inst.weights.resize(n_left);
  Rng rng(seed);
  for (std::int64_t l = 0; l < n_left; ++l) {
    for (std::int64_t r = 0; r < n_right; ++r) {
      if (rng.next_double() < density) inst.adjacency[l].push_back(r);
    }
    // A left vertex with no neighbors is a loop; keep at least one edge so
    // random instances stay interesting.
    if (inst.adjacency[l].empty()) {
      inst.adjacency[l].push_back(static_cast<std::int64_t>(rng.next_below(n_right)));
    }
  }
  std::set<double> used;
  draw_distinct_weights(inst.weights, rng, 0.0, 1.0, 0, static_cast<std::size_t>(n_left), used);
  return inst;
}

WeightedMatroidInstance load_matroid_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open instance file: " + path);
  std::string kind;
  std::int64_t n = 0;
  if (!(f >> kind >> n)) throw std::runtime_error("instance file: bad header line");

  WeightedMatroidInstance inst;
  inst.ground_size = n;
  inst.weights.resize(n);
  if (kind == "uniform") {
    inst.kind = MatroidKind::kUniform;
    if (!(f >> inst.uniform_rank)) throw std::runtime_error("instance file: uniform needs a rank");
  } else if (kind == "graphic") {
    inst.kind = MatroidKind::kGraphic;
    inst.edge_ends.resize(n);
  } else if (kind == "transversal") {
    inst.kind = MatroidKind::kTransversal;
    inst.adjacency.resize(n);
  } else {
    throw std::runtime_error("instance file: unknown kind '" + kind + "'");
  }

  std::string line;
  std::getline(f, line);  // rest of header
  std::int64_t rows = 0;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::int64_t id;
    double w;
    if (!(ls >> id >> w)) throw std::runtime_error("instance file: bad element line: " + line);
    if (id < 0 || id >= n) throw std::runtime_error("instance file: element id out of range");
    inst.weights[id] = w;
    if (inst.kind == MatroidKind::kGraphic) {
      std::int64_t u, v;
      if (!(ls >> u >> v)) throw std::runtime_error("instance file: graphic element needs endpoints");
      inst.edge_ends[id] = {u, v};
      inst.num_vertices = std::max({inst.num_vertices, u + 1, v + 1});
    } else if (inst.kind == MatroidKind::kTransversal) {
      std::int64_t r;
      while (ls >> r) {
        inst.adjacency[id].push_back(r);
        inst.num_right = std::max(inst.num_right, r + 1);
      }
    }
    ++rows;
  }
  if (rows != n) throw std::runtime_error("instance file: element count disagrees with header");
  check_instance(inst);
  return inst;
}

void save_matroid_instance(const WeightedMatroidInstance& inst, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.precision(17);
  switch (inst.kind) {
    case MatroidKind::kUniform:
      f << "uniform " << inst.ground_size << " " << inst.uniform_rank << "\n";
      for (std::int64_t e = 0; e < inst.ground_size; ++e) f << e << " " << inst.weights[e] << "\n";
      break;
    case MatroidKind::kGraphic:
      f << "graphic " << inst.ground_size << "\n";
      for (std::int64_t e = 0; e < inst.ground_size; ++e) {
        f << e << " " << inst.weights[e] << " " << inst.edge_ends[e].first << " "
          << inst.edge_ends[e].second << "\n";
      }
      break;
    case MatroidKind::kTransversal:
      f << "transversal " << inst.ground_size << "\n";
      for (std::int64_t e = 0; e < inst.ground_size; ++e) {
        f << e << " " << inst.weights[e];
        for (const std::int64_t r : inst.adjacency[e]) f << " " << r;
        f << "\n";
      }
      break;
  }
}

bool check_matroid_axioms(const WeightedMatroidInstance& inst) {
  if (inst.ground_size > 20) {
    throw std::invalid_argument("check_matroid_axioms: ground set too large for exhaustion");
  }
  const std::int64_t n = inst.ground_size;
  const std::uint64_t limit = 1ULL << n;

  std::vector<char> indep(limit, 0);
  std::vector<std::int64_t> subset;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    subset.clear();
    for (std::int64_t e = 0; e < n; ++e) {
      if (mask & (1ULL << e)) subset.push_back(e);
    }
    indep[mask] = is_independent(inst, subset) ? 1 : 0;
  }

  if (!indep[0]) return false;
  // Hereditary: remove any one element from an independent set.
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    if (!indep[mask]) continue;
    for (std::int64_t e = 0; e < n; ++e) {
      if ((mask & (1ULL << e)) && !indep[mask & ~(1ULL << e)]) return false;
    }
  }
  // Exchange: any smaller independent set extends from a larger one.
  std::vector<std::uint64_t> independent_masks;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    if (indep[mask]) independent_masks.push_back(mask);
  }
  for (const std::uint64_t x : independent_masks) {
    for (const std::uint64_t y : independent_masks) {
      if (std::popcount(y) >= std::popcount(x)) continue;
      bool extended = false;
      std::uint64_t candidates = x & ~y;
      while (candidates) {
        const std::uint64_t bit = candidates & (~candidates + 1);
        if (indep[y | bit]) {
          extended = true;
          break;
        }
        candidates ^= bit;
      }
      if (!extended) return false;
    }
  }
  return true;
}

GreedyResult brute_force_best_basis(const WeightedMatroidInstance& inst) {
  if (inst.ground_size > 20) {
    throw std::invalid_argument("brute_force_best_basis: ground set too large for exhaustion");
  }
  const std::int64_t n = inst.ground_size;
  GreedyResult best;
  std::vector<std::int64_t> subset;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    subset.clear();
    double weight = 0.0;
    for (std::int64_t e = 0; e < n; ++e) {
      if (mask & (1ULL << e)) {
        subset.push_back(e);
        weight += inst.weights[e];
      }
    }
    if (weight > best.weight && is_independent(inst, subset)) {
      best.basis = subset;
      best.weight = weight;
    }
  }
  return best;
}

}  // namespace stoplab
