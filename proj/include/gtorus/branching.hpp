// Copyright 2026 the gtorus authors
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

#ifndef GTORUS_BRANCHING_HPP_
#define GTORUS_BRANCHING_HPP_

#include <cstdint>
#include <vector>

#include "gtorus/graph.hpp"
#include "gtorus/rng.hpp"

namespace gtorus {

/// Offspring law sum_r Bin(N_r, p_r) of the dominating branching process.
///
/// The exact pmf is obtained by convolving the per-ring binomials in
/// extended precision (tail truncated below 1e-22 of mass and
/// renormalized), which makes draws O(1) through an alias table. A direct
/// per-ring binomial sampler is kept for cross-checks.
class OffspringLaw {
 public:
  explicit OffspringLaw(const GraphParams& params);

  static OffspringLaw critical(int N) {
    return OffspringLaw(GraphParams::critical_at(N));
  }

  const GraphParams& params() const { return params_; }

  /// Moments from the (N_r, p_r) table: mean sum N_r p_r and
  /// variance sum N_r p_r (1 - p_r).
  double mean() const { return mean_; }
  double variance() const { return variance_; }
  double second_moment() const { return variance_ + mean_ * mean_; }

  /// Moments of the tabulated pmf (cross-check against the formulas).
  double pmf_mean() const;
  double pmf_second_moment() const;

  const std::vector<double>& pmf() const { return pmf_; }

  std::int64_t sample(Rng& rng) const {
    return static_cast<std::int64_t>(alias_.sample(rng));
  }

  /// Slow reference draw: explicit sum of per-ring binomials.
  std::int64_t sample_direct(Rng& rng) const;

 private:
  GraphParams params_;
  double mean_ = 0.0;
  double variance_ = 0.0;
  std::vector<std::int64_t> ring_n_;
  std::vector<double> ring_p_;
  std::vector<double> pmf_;
  AliasTable alias_;
};

/// Summary of one simulated tree. Generation counts are zeta_k with
/// zeta_0 = 1, so max_generation >= 1 and total >= max_generation.
struct TreeSummary {
  std::int64_t total = 0;
  std::int64_t max_generation = 0;
  std::int64_t extinction_generation = 0;  // first k with zeta_k = 0
  bool cap_hit = false;
};

/// Generation-by-generation simulation until extinction or until total
/// progeny exceeds `population_cap` (a flagged, not an error, outcome).
TreeSummary simulate_tree(const OffspringLaw& law, Rng& rng,
                          std::int64_t population_cap);

struct TailEstimate {
  double value = 0.0;  // K * P(max_k zeta_k > K)
  double lo = 0.0;     // 99% binomial CI, scaled by K
  double hi = 0.0;
  std::int64_t exceed_count = 0;
  std::int64_t samples = 0;
};

/// Monte Carlo estimate of K * P(max_{k>=1} zeta_k > K); each tree stops as
/// soon as a generation exceeds K, so the expected work per tree is O(K).
TailEstimate max_tail_estimate(const OffspringLaw& law, std::int64_t K,
                               std::int64_t samples, Rng& rng);

}  // namespace gtorus

#endif  // GTORUS_BRANCHING_HPP_
