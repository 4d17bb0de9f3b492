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

#ifndef GTORUS_MARKOV_HPP_
#define GTORUS_MARKOV_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "gtorus/graph.hpp"
#include "gtorus/rng.hpp"

namespace gtorus {

/// Edge-probability-proportional Markov kernel on V_N, optionally with a
/// forbidden vertex set A removed from the state space. With empty A the
/// normalizer equals the expected degree sum and is the same for every row;
/// with nonempty A it is recomputed per row.
struct KernelSpec {
  GraphParams params;
  std::vector<std::uint32_t> forbidden;  // encoded vertex ids

  explicit KernelSpec(const GraphParams& p,
                      std::vector<std::uint32_t> A = {})
      : params(p), forbidden(std::move(A)) {}

  std::int64_t n() const { return params.n(); }
};

/// Row P(u, .) as a dense probability vector over all of V_N (entries at u
/// and at forbidden vertices are zero). Throws if u is forbidden or the row
/// has no mass.
Eigen::VectorXd kernel_row(const KernelSpec& spec, TorusPoint u);

/// Half-L1 distance between two probability vectors of equal dimension.
double tv_distance(const Eigen::VectorXd& mu, const Eigen::VectorXd& nu);

/// Exact total-variation mixing profile against the TV bound
/// (1 - c1)^{k/2 - 1}, c1 = c/2.
struct MixingReport {
  int N = 0;
  double c1 = 0.0;
  std::vector<int> k;           // 1 .. k_max
  std::vector<double> max_tv;   // max over sampled starts of TV(P^k(u,.), pi)
  std::vector<double> bound;    // (1 - c1)^{k/2 - 1}

  /// True when max_tv <= bound for every recorded k >= from_k.
  bool within_bound(int from_k = 2) const;
};

/// Dense row iteration of P^k for a sample of start states; state space is
/// capped at `state_cap` (the kernel must have empty A).
MixingReport mixing_profile(const KernelSpec& spec, int k_max, int n_starts,
                            Rng& rng, std::int64_t state_cap = 1024);

/// P^2(u, u) = sum_r N_r p_r^2 / Z_N^2, computed by exact ring sums in O(N);
/// independent of u. Zero coupling gives 0.
double return_probability(const KernelSpec& spec);

struct DominanceReport {
  std::int64_t checked = 0;
  std::int64_t violations = 0;
  double max_excess = 0.0;  // worst P^k(u,v) - P^2(u,u) seen
  bool all_pass() const { return violations == 0; }
};

/// Verifies P^k(u, v) <= P^2(u, u) for k in [2, k_max]. With n_pairs == 0
/// every (u, v) pair is checked from exact matrix powers; otherwise n_pairs
/// random pairs are checked from row powers.
DominanceReport two_step_dominance_check(const KernelSpec& spec, int k_max,
                                         std::int64_t n_pairs, Rng& rng,
                                         std::int64_t state_cap = 1024);

/// Extra vertices joining the forbidden set before step i (1-based);
/// may be null for a constant forbidden set.
using ForbiddenGrowth =
    std::function<void(std::int64_t step, std::vector<std::uint32_t>& out)>;

/// Shared ring-alias sampler for one kernel: O(1) draws from P(u, .).
class KernelSampler {
 public:
  explicit KernelSampler(const GraphParams& params);

  const GraphTables& tables() const { return *tables_; }

  /// One step of the unrestricted chain from u.
  std::uint32_t step(std::uint32_t u, Rng& rng) const;

 private:
  std::shared_ptr<const GraphTables> tables_;
  AliasTable ring_alias_;
  std::vector<int> alias_to_r_;
};

/// Self-avoiding walk driven by the restricted kernels P_{A_i U trajectory}:
/// at each step the base row is renormalized against the forbidden set plus
/// the past trajectory (sampled exactly via rejection with an inverse-CDF
/// fallback). Returns the trajectory of length L+1 including the start.
std::vector<std::uint32_t> restricted_walk_sample(
    const KernelSpec& spec, std::int64_t length, TorusPoint start,
    const ForbiddenGrowth& growth, Rng& rng);

/// Same walk with a caller-owned sampler, for tight Monte Carlo loops.
std::vector<std::uint32_t> restricted_walk_sample(
    const KernelSpec& spec, const KernelSampler& sampler, std::int64_t length,
    TorusPoint start, const ForbiddenGrowth& growth, Rng& rng);

}  // namespace gtorus

#endif  // GTORUS_MARKOV_HPP_
