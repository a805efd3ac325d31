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

#include "stoplab/secretary.hpp"

#include <cmath>
#include <stdexcept>

namespace stoplab {

namespace {

void check_instance(const ArrivalSequence& seq, const RankedInstance& inst) {
  if (seq.n != inst.n) {
    throw std::invalid_argument("policy: sequence and instance disagree on n");
  }
}

PolicyOutcome hire(const ArrivalSequence& seq, const ArrivalEvent& e, const RankedInstance& inst) {
  PolicyOutcome out;
  out.hired = e.item;
  out.decision_round = e.round;
  if (seq.timed) out.decision_time = e.time;
  out.won = inst.rank[e.item] == 1;
  return out;
}

}  // namespace

RankedInstance identity_ranks(std::int64_t n) {
  RankedInstance inst{n, {}};
  inst.rank.resize(n);
  for (std::int64_t i = 0; i < n; ++i) inst.rank[i] = i + 1;
  return inst;
}

PolicyOutcome run_threshold_policy(const ArrivalSequence& seq, const RankedInstance& inst,
                                   std::int64_t f_value) {
  check_instance(seq, inst);
  if (seq.k != 2) throw std::invalid_argument("threshold policy requires k=2");
  if (f_value < 0 || f_value > seq.n) {
    throw std::invalid_argument("threshold policy: f_value must be in [0, n]");
  }
  ItemId candidate = -1;
  std::int64_t distinct = 0;
  for (const auto& e : seq.events) {
    if (e.occurrence == 1) ++distinct;
    if (e.item == candidate && distinct > f_value) return hire(seq, e, inst);
    if (candidate < 0 || inst.rank[e.item] < inst.rank[candidate]) candidate = e.item;
  }
  return {};
}

PolicyOutcome run_time_policy(const ArrivalSequence& seq, const RankedInstance& inst, double mu) {
  check_instance(seq, inst);
  if (!seq.timed) throw std::invalid_argument("time policy requires a timed sequence");
  if (seq.k != 2) throw std::invalid_argument("time policy requires k=2");
  if (!(mu >= 0.0 && mu < 1.0)) throw std::invalid_argument("time policy: mu must be in [0,1)");
  ItemId candidate = -1;
  for (const auto& e : seq.events) {
    if (e.item == candidate && e.time >= mu) return hire(seq, e, inst);
    if (candidate < 0 || inst.rank[e.item] < inst.rank[candidate]) candidate = e.item;
  }
  return {};
}

PolicyOutcome run_k_returning_no_wait(const ArrivalSequence& seq, const RankedInstance& inst) {
  check_instance(seq, inst);
  ItemId candidate = -1;
  for (const auto& e : seq.events) {
    if (candidate < 0 || inst.rank[e.item] < inst.rank[candidate]) candidate = e.item;
    if (e.occurrence == seq.k && e.item == candidate) return hire(seq, e, inst);
  }
  return {};
}

Rational no_wait_win_prob(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("no_wait_win_prob: n must be >= 1");
  return {BigInt(2 * n + 1), BigInt(3 * n)};
}

double k3_win_prob(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("k3_win_prob: n must be >= 2");
  // The policy loses exactly when some item's three arrivals all precede the
  // first arrival of every better item; for the j-th best item that event has
  // probability 6/((3j-2)(3j-1)(3j)), and the events factorize across j.
  double p = 1.0;
  for (std::int64_t j = 2; j <= n; ++j) {
    const double fj = static_cast<double>(j);
    p *= 1.0 - 6.0 / ((3.0 * fj - 2.0) * (3.0 * fj - 1.0) * (3.0 * fj));
  }
  return p;
}

double win_lower_bound(double mu, std::int64_t k_terms) {
  if (!(mu >= 0.0 && mu < 1.0)) throw std::invalid_argument("win_lower_bound: mu must be in [0,1)");
  if (k_terms < 1) throw std::invalid_argument("win_lower_bound: k_terms must be >= 1");
  const double x = 1.0 - mu;
  double acc = 2.0 * mu * (1.0 - mu);
  double xpow = 1.0;  // (1-mu)^(2i)
  for (std::int64_t i = 1; i <= k_terms; ++i) {
    xpow *= x * x;
    const double fi = static_cast<double>(i);
    acc += xpow * (mu * mu + 4.0 * mu * fi - 2.0 * mu * mu * fi) / (3.0 * fi);
  }
  acc += (2.0 / 3.0) * std::pow(x, static_cast<double>(2 * k_terms + 1));
  return acc;
}

double asymptotic_win(double x) {
  if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("asymptotic_win: x must be in [0,1)");
  const double one_minus = 1.0 - x;
  return 2.0 * x - (4.0 / 3.0) * x * x -
         (1.0 / 3.0) * one_minus * one_minus * std::log1p(-x * x);
}

OptimalMuResult optimize_mu(double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("optimize_mu: tolerance must be > 0");

  double lo = 0.01;
  double hi = 0.99;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - (hi - lo) * inv_phi;
  double d = lo + (hi - lo) * inv_phi;
  double fc = asymptotic_win(c);
  double fd = asymptotic_win(d);
  // Golden-section narrows to a coarse bracket around the maximum; bisection
  // on the derivative finishes to the requested tolerance.
  const double coarse = std::max(tolerance, 1e-4);
  while (hi - lo > coarse) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - (hi - lo) * inv_phi;
      fc = asymptotic_win(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + (hi - lo) * inv_phi;
      fd = asymptotic_win(d);
    }
  }

  const double h = 1e-7;
  auto deriv = [&](double x) { return (asymptotic_win(x + h) - asymptotic_win(x - h)) / (2 * h); };
  double a = lo;
  double b = hi;
  if (deriv(a) <= 0.0 || deriv(b) >= 0.0) {
    // Bracket failed to straddle the root (flat tail); widen conservatively.
    a = 0.5;
    b = 0.9;
  }
  while (b - a > tolerance) {
    const double mid = 0.5 * (a + b);
    if (deriv(mid) > 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  const double x_star = 0.5 * (a + b);
  return {1.0 - x_star, x_star, asymptotic_win(x_star)};
}

Rational pairwise_dominance_prob(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("pairwise_dominance_prob: k must be >= 1");
  return {BigInt(1), binomial(2 * k, k)};
}

ThresholdTable exact_threshold_table(std::int64_t n, const EnumerationBudget& budget) {
  ThresholdTable table;
  table.rows = enumerate_policy_table(n, 2, PolicyFamily::kThreshold, budget);
  std::size_t best = 0;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    if (table.rows[i].second > table.rows[best].second) best = i;
  }
  table.argmax = table.rows[best].first;
  return table;
}

}  // namespace stoplab
