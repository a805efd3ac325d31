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

#include "stoplab/matching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "stoplab/random.hpp"

namespace stoplab {

namespace {

constexpr double kForbidden = 1e9;

// Incremental min-cost assignment with potentials (Jonker-Volgenant style).
// Left rows are inserted one at a time; after every insertion the maintained
// assignment is optimal for the rows inserted so far. Each row owns a private
// zero-cost dummy column, so leaving a row unmatched is always an option and
// the maximized quantity is exactly the matching weight.
class IncrementalAssignment {
 public:
  IncrementalAssignment(std::int64_t n_right, std::int64_t max_rows)
      : n_right_(n_right),
        cols_(n_right + max_rows),
        col_to_row_(cols_ + 1, -1),
        v_(cols_ + 1, 0.0),
        way_(cols_ + 1, 0),
        minv_(cols_ + 1, 0.0),
        used_(cols_ + 1, 0) {}

  // Neighbors are (right index, weight) pairs. Returns the internal row id.
  std::int64_t add_row(const std::vector<std::pair<std::int64_t, double>>& neighbors) {
    const auto row = static_cast<std::int64_t>(cost_.size());
    cost_.emplace_back(cols_, kForbidden);
    auto& row_cost = cost_.back();
    for (const auto& [right, weight] : neighbors) row_cost[right] = -weight;
    row_cost[n_right_ + row] = 0.0;  // own dummy
    u_.push_back(0.0);

    // Augment: internal columns are 1-based with 0 as the virtual start.
    std::fill(minv_.begin(), minv_.end(), std::numeric_limits<double>::infinity());
    std::fill(used_.begin(), used_.end(), 0);
    std::int64_t j0 = 0;
    col_to_row_[0] = row;
    do {
      used_[j0] = 1;
      const std::int64_t i0 = col_to_row_[j0];
      double delta = std::numeric_limits<double>::infinity();
      std::int64_t j1 = -1;
      for (std::int64_t j = 1; j <= cols_; ++j) {
        if (used_[j]) continue;
        const double cur = cost_[i0][j - 1] - u_[i0] - v_[j];
        if (cur < minv_[j]) {
          minv_[j] = cur;
          way_[j] = j0;
        }
        if (minv_[j] < delta) {
          delta = minv_[j];
          j1 = j;
        }
      }
      for (std::int64_t j = 0; j <= cols_; ++j) {
        if (used_[j]) {
          u_[col_to_row_[j]] += delta;
          v_[j] -= delta;
        } else {
          minv_[j] -= delta;
        }
      }
      j0 = j1;
    } while (col_to_row_[j0] != -1);
    do {
      const std::int64_t j1 = way_[j0];
      col_to_row_[j0] = col_to_row_[j1];
      j0 = j1;
    } while (j0 != 0);
    return row;
  }

  std::int64_t rows() const { return static_cast<std::int64_t>(cost_.size()); }

  // Real right column matched to this row, or -1 when the row sits on a
  // dummy or on a zero-weight edge.
  std::int64_t matched_right(std::int64_t row) const {
    for (std::int64_t j = 1; j <= n_right_; ++j) {
      if (col_to_row_[j] == row && -cost_[row][j - 1] > 0.0) return j - 1;
    }
    return -1;
  }

  // All (row, right) pairs with positive weight.
  std::vector<std::pair<std::int64_t, std::int64_t>> matched_pairs() const {
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    for (std::int64_t j = 1; j <= n_right_; ++j) {
      const std::int64_t row = col_to_row_[j];
      if (row >= 0 && -cost_[row][j - 1] > 0.0) pairs.emplace_back(row, j - 1);
    }
    return pairs;
  }

  double weight_of(std::int64_t row, std::int64_t right) const { return -cost_[row][right]; }

 private:
  std::int64_t n_right_;
  std::int64_t cols_;
  std::vector<std::vector<double>> cost_;
  std::vector<std::int64_t> col_to_row_;
  std::vector<double> u_;
  std::vector<double> v_;
  std::vector<std::int64_t> way_;
  std::vector<double> minv_;
  std::vector<char> used_;
};

void check_instance(const BipartiteInstance& inst) {
  if (inst.n_left < 0 || inst.n_right < 0) {
    throw std::invalid_argument("bipartite instance: negative dimensions");
  }
  for (const auto& e : inst.edges) {
    if (e.left < 0 || e.left >= inst.n_left || e.right < 0 || e.right >= inst.n_right) {
      throw std::invalid_argument("bipartite instance: edge endpoint out of range");
    }
    if (e.weight < 0.0) throw std::invalid_argument("bipartite instance: negative edge weight");
  }
}

std::vector<std::vector<std::pair<std::int64_t, double>>> adjacency_of(
    const BipartiteInstance& inst) {
  std::vector<std::vector<std::pair<std::int64_t, double>>> adj(inst.n_left);
  for (const auto& e : inst.edges) adj[e.left].emplace_back(e.right, e.weight);
  return adj;
}

Matching extract(const IncrementalAssignment& solver,
                 const std::vector<std::int64_t>& row_to_left) {
  Matching m;
  for (const auto& [row, right] : solver.matched_pairs()) {
    m.edges.emplace_back(row_to_left[row], right);
    m.weight += solver.weight_of(row, right);
  }
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

}  // namespace

Matching max_weight_matching(const BipartiteInstance& inst) {
  std::vector<std::int64_t> all(inst.n_left);
  for (std::int64_t l = 0; l < inst.n_left; ++l) all[l] = l;
  return max_weight_matching(inst, all);
}

Matching max_weight_matching(const BipartiteInstance& inst,
                             const std::vector<std::int64_t>& left_subset) {
  check_instance(inst);
  const auto adj = adjacency_of(inst);
  IncrementalAssignment solver(inst.n_right, static_cast<std::int64_t>(left_subset.size()));
  std::vector<std::int64_t> row_to_left;
  row_to_left.reserve(left_subset.size());
  for (const std::int64_t l : left_subset) {
    if (l < 0 || l >= inst.n_left) {
      throw std::invalid_argument("max_weight_matching: left vertex out of range");
    }
    solver.add_row(adj[l]);
    row_to_left.push_back(l);
  }
  return extract(solver, row_to_left);
}

ReturningMatchingResult run_returning_matching(const BipartiteInstance& inst,
                                               const ArrivalSequence& seq,
                                               const ReturningMatchingOptions& options) {
  check_instance(inst);
  if (seq.k != 2) throw std::invalid_argument("returning matching requires k=2");
  if (seq.n != inst.n_left) {
    throw std::invalid_argument("returning matching: sequence does not cover the left side");
  }

  const auto adj = adjacency_of(inst);
  const std::int64_t n = inst.n_left;

  ReturningMatchingResult result;
  result.n_right = inst.n_right;

  std::vector<std::int64_t> first_half_count(n, 0);
  for (std::int64_t r = 0; r < n; ++r) ++first_half_count[seq.events[r].item];
  for (std::int64_t l = 0; l < n; ++l) {
    if (first_half_count[l] == 1) result.l_prime.push_back(l);
  }

  // Running matching M, seeded by the optimal matching on the once-arrived
  // vertices.
  IncrementalAssignment initial(inst.n_right, static_cast<std::int64_t>(result.l_prime.size()));
  for (const std::int64_t l : result.l_prime) initial.add_row(adj[l]);
  Matching m = extract(initial, result.l_prime);
  result.round_n_weight = m.weight;

  std::vector<std::int64_t> left_match(n, -1);
  std::vector<std::int64_t> right_match(inst.n_right, -1);
  for (const auto& [l, r] : m.edges) {
    left_match[l] = r;
    right_match[r] = l;
  }

  if (options.record_trace) {
    result.trace.reserve(seq.rounds());
    for (std::int64_t r = 0; r < n; ++r) {
      const auto& e = seq.events[r];
      // M comes into existence at round n.
      const bool live = r == n - 1;
      result.trace.push_back(MatchingTraceRow{
          e.round, e.item, e.occurrence,
          live ? static_cast<std::int64_t>(m.edges.size()) : 0, live ? m.weight : 0.0, -1, -1});
    }
  }

  // Re-solver over everything seen so far, grown one vertex per first arrival.
  IncrementalAssignment current(inst.n_right, n);
  std::vector<std::int64_t> left_to_row(n, -1);
  std::vector<std::int64_t> row_to_left;
  row_to_left.reserve(n);
  for (std::int64_t r = 0; r < n; ++r) {
    const std::int64_t l = seq.events[r].item;
    if (left_to_row[l] < 0) {
      left_to_row[l] = current.add_row(adj[l]);
      row_to_left.push_back(l);
    }
  }

  for (std::int64_t r = n; r < seq.rounds(); ++r) {
    const auto& e = seq.events[r];
    const std::int64_t l = e.item;
    if (left_to_row[l] < 0) {
      left_to_row[l] = current.add_row(adj[l]);
      row_to_left.push_back(l);
    }
    std::int64_t added_left = -1;
    std::int64_t added_right = -1;
    if (!options.first_arrivals_only || e.occurrence == 1) {
      const std::int64_t right = current.matched_right(left_to_row[l]);
      if (right >= 0 && left_match[l] < 0 && right_match[right] < 0) {
        const double w = current.weight_of(left_to_row[l], right);
        left_match[l] = right;
        right_match[right] = l;
        m.edges.emplace_back(l, right);
        m.weight += w;
        added_left = l;
        added_right = right;
      }
    }
    if (options.record_trace) {
      result.trace.push_back(MatchingTraceRow{e.round, e.item, e.occurrence,
                                              static_cast<std::int64_t>(m.edges.size()), m.weight,
                                              added_left, added_right});
    }
  }

  std::sort(m.edges.begin(), m.edges.end());
  result.matching = std::move(m);
  return result;
}

std::vector<std::pair<std::int64_t, double>> unmatched_right_fraction(
    const ReturningMatchingResult& result) {
  if (result.trace.empty()) {
    throw std::invalid_argument("unmatched_right_fraction: result has no recorded trace");
  }
  const std::int64_t n = static_cast<std::int64_t>(result.trace.size()) / 2;
  std::vector<std::pair<std::int64_t, double>> fractions;
  for (const auto& row : result.trace) {
    if (row.round < n) continue;
    const double unmatched =
        static_cast<double>(result.n_right - row.matching_size) / static_cast<double>(result.n_right);
    fractions.emplace_back(row.round, unmatched);
  }
  return fractions;
}

ConcentrationStats concentration_stats(std::int64_t n, std::int64_t trials, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("concentration_stats: n must be >= 1");
  if (trials < 1) throw std::invalid_argument("concentration_stats: trials must be >= 1");

  ConcentrationStats stats;
  stats.n = n;
  stats.trials = trials;
  stats.expected_mean = static_cast<double>(n) * static_cast<double>(n) / (2.0 * n - 1.0);

  const double half = n / 2.0;
  const double root = std::sqrt(static_cast<double>(n));
  double sum = 0.0;
  double sumsq = 0.0;
  std::int64_t outside[3] = {0, 0, 0};
  std::vector<std::int64_t> count(n);
  for (std::int64_t t = 0; t < trials; ++t) {
    const ArrivalSequence seq = gen_permutation_sequence(n, 2, trial_seed(seed, t));
    std::fill(count.begin(), count.end(), 0);
    for (std::int64_t r = 0; r < n; ++r) ++count[seq.events[r].item];
    std::int64_t singles = 0;
    for (std::int64_t l = 0; l < n; ++l) singles += count[l] == 1;
    const double s = static_cast<double>(singles);
    sum += s;
    sumsq += s * s;
    const double dev = std::abs(s - half);
    if (dev > 2 * root) ++outside[0];
    if (dev > 4 * root) ++outside[1];
    if (dev > 8 * root) ++outside[2];
  }
  stats.mean = sum / trials;
  stats.stddev = trials > 1 ? std::sqrt((sumsq - sum * sum / trials) / (trials - 1)) : 0.0;
  for (int c = 0; c < 3; ++c) {
    stats.frac_outside[c] = static_cast<double>(outside[c]) / static_cast<double>(trials);
  }
  return stats;
}

BipartiteInstance complete_bipartite_instance(std::int64_t n_left, std::int64_t n_right,
                                              std::uint64_t seed) {
  if (n_left < 1 || n_right < 1) {
    throw std::invalid_argument("complete_bipartite_instance: sizes must be >= 1");
  }
  BipartiteInstance inst{n_left, n_right, {}};
  inst.edges.reserve(n_left * n_right);
  Rng rng(seed);
  for (std::int64_t l = 0; l < n_left; ++l) {
    for (std::int64_t r = 0; r < n_right; ++r) {
      inst.edges.push_back(BipartiteEdge{l, r, rng.next_double()});
    }
  }
  return inst;
}

BipartiteInstance load_bipartite_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open instance file: " + path);
  BipartiteInstance inst;
  if (!(f >> inst.n_left >> inst.n_right)) {
    throw std::runtime_error("bipartite instance file: bad header line");
  }
  std::int64_t l, r;
  double w;
  while (f >> l >> r >> w) inst.edges.push_back(BipartiteEdge{l, r, w});
  check_instance(inst);
  return inst;
}

void save_bipartite_instance(const BipartiteInstance& inst, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.precision(17);
  f << inst.n_left << " " << inst.n_right << "\n";
  for (const auto& e : inst.edges) f << e.left << " " << e.right << " " << e.weight << "\n";
}

std::string matching_trace_to_csv(const ReturningMatchingResult& result) {
  std::string out = "round,event_item,occurrence,matching_size,matching_weight,added_edge\n";
  char buf[160];
  for (const auto& row : result.trace) {
    if (row.added_left >= 0) {
      std::snprintf(buf, sizeof(buf), "%lld,%lld,%lld,%lld,%.12g,%lld-%lld\n",
                    static_cast<long long>(row.round), static_cast<long long>(row.item),
                    static_cast<long long>(row.occurrence),
                    static_cast<long long>(row.matching_size), row.matching_weight,
                    static_cast<long long>(row.added_left), static_cast<long long>(row.added_right));
    } else {
      std::snprintf(buf, sizeof(buf), "%lld,%lld,%lld,%lld,%.12g,\n",
                    static_cast<long long>(row.round), static_cast<long long>(row.item),
                    static_cast<long long>(row.occurrence),
                    static_cast<long long>(row.matching_size), row.matching_weight);
    }
    out += buf;
  }
  return out;
}

namespace {

void brute_force_rec(const std::vector<std::vector<std::pair<std::int64_t, double>>>& adj,
                     std::int64_t l, std::vector<char>& right_used, double weight, Matching& cur,
                     Matching& best) {
  if (l == static_cast<std::int64_t>(adj.size())) {
    if (weight > best.weight) {
      best = cur;
      best.weight = weight;
    }
    return;
  }
  brute_force_rec(adj, l + 1, right_used, weight, cur, best);  // leave l unmatched
  for (const auto& [r, w] : adj[l]) {
    if (right_used[r] || w <= 0.0) continue;
    right_used[r] = 1;
    cur.edges.emplace_back(l, r);
    brute_force_rec(adj, l + 1, right_used, weight + w, cur, best);
    cur.edges.pop_back();
    right_used[r] = 0;
  }
}

}  // namespace

Matching brute_force_matching(const BipartiteInstance& inst) {
  check_instance(inst);
  if (inst.n_left > 10 || inst.n_right > 10) {
    throw std::invalid_argument("brute_force_matching: instance too large for exhaustion");
  }
  const auto adj = adjacency_of(inst);
  std::vector<char> right_used(inst.n_right, 0);
  Matching cur, best;
  brute_force_rec(adj, 0, right_used, 0.0, cur, best);
  std::sort(best.edges.begin(), best.edges.end());
  return best;
}

}  // namespace stoplab
