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

#ifndef GTORUS_STATS_HPP_
#define GTORUS_STATS_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "gtorus/explore.hpp"
#include "gtorus/graph.hpp"
#include "gtorus/limit.hpp"

namespace gtorus {

/// Two-sample Kolmogorov-Smirnov statistic: sup |F_a - F_b| over the merged
/// sample, with tied values handled jointly.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Per-grid-point sample moments of the rescaled walk, with 99% CIs.
/// Limit targets: mean -> -s^2/2, variance -> s.
struct MomentRow {
  double s = 0.0;
  double mean = 0.0, mean_lo = 0.0, mean_hi = 0.0;
  double variance = 0.0, var_lo = 0.0, var_hi = 0.0;
};

/// M explorations with budget ceil(max(s_grid) * n^{2/3}); per-run streams
/// derive from (seed, run, kExplore). Requires M >= 100 and the budget to
/// fit inside the vertex count.
std::vector<MomentRow> walk_moments(const GraphParams& params,
                                    std::span<const double> s_grid,
                                    std::int64_t runs, std::uint64_t seed,
                                    int threads = 1);

/// Raw per-run rescaled walk values (runs x |s_grid|), the ingredient of
/// walk_moments; exposed for CSV export and tests.
Eigen::MatrixXd walk_samples(const GraphParams& params,
                             std::span<const double> s_grid,
                             std::int64_t runs, std::uint64_t seed,
                             int threads = 1);

/// Two-sample comparison of rescaled completed component sizes against
/// completed limit excursion lengths, coordinate by coordinate. Runs with
/// fewer than j completed components contribute their available
/// coordinates; the shortfall per coordinate is reported, never dropped
/// silently.
struct ComponentVsExcursion {
  std::vector<double> ks;               // per coordinate 1..j
  std::vector<std::int64_t> shortfall;  // graph runs missing coordinate i
  Eigen::MatrixXd graph_samples;        // M_graph x j, NaN where missing
  LimitComponentSample limit_samples;
};

ComponentVsExcursion component_vs_excursion(const GraphParams& params,
                                            double T, std::int64_t graph_runs,
                                            std::int64_t limit_runs, int top_j,
                                            double dt, std::uint64_t seed,
                                            int threads = 1);

/// Empirical law of the j-th processed vertex against uniform, paired with
/// the noise floor of a genuinely uniform sample of the same size.
struct UniformityResult {
  double tv = 0.0;           // TV(empirical law of v_j, uniform)
  double tv_lo = 0.0;        // 99% multinomial bootstrap CI for tv
  double tv_hi = 0.0;
  double noise_floor = 0.0;  // TV of the paired uniform sample
  double ratio = 0.0;        // tv / noise_floor
  std::int64_t runs = 0;
};

/// With from_step == 0 the separation precondition is skipped (plain law of
/// v_j); otherwise requires at_step - from_step >= ceil(n^{1/6}).
UniformityResult walker_uniformity(const GraphParams& params,
                                   std::int64_t from_step,
                                   std::int64_t at_step, std::int64_t runs,
                                   std::uint64_t seed, int threads = 1);

/// Empirical frequency of {|I_k| >= C k} against the tail bound
/// exp(-k (C - e)), for k = 1..k_max. Requires C > e.
struct GrowthRow {
  int k = 0;
  double freq = 0.0;
  double bound = 0.0;
  double se = 0.0;  // binomial standard error at the bound
  bool pass = false;
};

std::vector<GrowthRow> growth_bound_report(const GraphParams& params,
                                           std::int64_t runs, int k_max,
                                           double C, std::uint64_t seed,
                                           int threads = 1);

/// Aggregate of one campaign: moment table plus the distributional
/// comparison, with everything needed to reproduce it bit for bit.
struct CampaignResult {
  GraphParams params;
  double T = 0.0;
  double dt = 0.0;
  std::int64_t runs = 0;
  std::int64_t limit_runs = 0;
  int top_j = 0;
  std::uint64_t seed = 0;
  std::vector<double> s_grid;
  std::vector<MomentRow> moments;
  ComponentVsExcursion comparison;
};

CampaignResult run_campaign(const GraphParams& params, double T,
                            std::span<const double> s_grid,
                            std::int64_t runs, std::int64_t limit_runs,
                            int top_j, double dt, std::uint64_t seed,
                            int threads = 1);

}  // namespace gtorus

#endif  // GTORUS_STATS_HPP_
