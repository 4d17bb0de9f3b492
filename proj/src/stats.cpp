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

#include "gtorus/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "gtorus/parallel.hpp"

namespace gtorus {

namespace {

constexpr double kZ99 = 2.5758293035489004;  // 99% two-sided normal quantile

struct ExploreWorkspace {
  explicit ExploreWorkspace(std::shared_ptr<const GraphTables> tables)
      : oracle(std::move(tables)) {}
  RevealOracle oracle;
  ExplorationTrace trace;
};

std::int64_t scaled_budget(std::int64_t n, double T) {
  const double n13 = std::cbrt(static_cast<double>(n));
  return static_cast<std::int64_t>(std::ceil(n13 * n13 * T));
}

}  // namespace

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample: empty sample");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < sa.size() || ib < sb.size()) {
    double x;
    if (ia < sa.size() && (ib == sb.size() || sa[ia] <= sb[ib])) {
      x = sa[ia];
    } else {
      x = sb[ib];
    }
    while (ia < sa.size() && sa[ia] == x) ++ia;
    while (ib < sb.size() && sb[ib] == x) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / na -
                             static_cast<double>(ib) / nb));
  }
  return d;
}

Eigen::MatrixXd walk_samples(const GraphParams& params,
                             std::span<const double> s_grid,
                             std::int64_t runs, std::uint64_t seed,
                             int threads) {
  if (s_grid.empty()) {
    throw std::invalid_argument("walk_samples: empty grid");
  }
  for (double s : s_grid) {
    if (!(s > 0.0)) {
      throw std::invalid_argument("walk_samples: grid points must be > 0");
    }
  }
  const double T = *std::max_element(s_grid.begin(), s_grid.end());
  const std::int64_t n = params.n();
  const std::int64_t budget = scaled_budget(n, T);
  if (budget > n) {
    throw std::runtime_error("walk_samples: budget exceeds the vertex count");
  }
  auto tables = std::make_shared<const GraphTables>(params);
  const auto cols = static_cast<std::int64_t>(s_grid.size());
  Eigen::MatrixXd out(runs, cols);

  std::vector<std::unique_ptr<ExploreWorkspace>> ws;
  for (int w = 0; w < std::max(threads, 1); ++w) {
    ws.push_back(std::make_unique<ExploreWorkspace>(tables));
  }
  std::vector<double> grid(s_grid.begin(), s_grid.end());
  run_indexed(runs, threads, [&](int worker, std::int64_t run) {
    auto& work = *ws[static_cast<std::size_t>(worker)];
    Rng rng = derive_stream(seed, static_cast<std::uint64_t>(run),
                            StreamTag::kExplore);
    work.oracle.reset();
    explore_into(work.oracle, rng, budget, work.trace);
    const auto points = rescale_walk(work.trace, grid);
    for (std::int64_t j = 0; j < cols; ++j) {
      out(run, j) = points[static_cast<std::size_t>(j)].second;
    }
  });
  return out;
}

std::vector<MomentRow> walk_moments(const GraphParams& params,
                                    std::span<const double> s_grid,
                                    std::int64_t runs, std::uint64_t seed,
                                    int threads) {
  if (runs < 100) {
    throw std::invalid_argument("walk_moments: need at least 100 runs");
  }
  const Eigen::MatrixXd samples =
      walk_samples(params, s_grid, runs, seed, threads);
  std::vector<MomentRow> rows;
  rows.reserve(s_grid.size());
  const double m = static_cast<double>(runs);
  for (std::int64_t j = 0; j < samples.cols(); ++j) {
    MomentRow row;
    row.s = s_grid[static_cast<std::size_t>(j)];
    row.mean = samples.col(j).mean();
    const double ss = (samples.col(j).array() - row.mean).square().sum();
    row.variance = ss / (m - 1.0);
    const double mean_se = std::sqrt(row.variance / m);
    row.mean_lo = row.mean - kZ99 * mean_se;
    row.mean_hi = row.mean + kZ99 * mean_se;
    const double var_se = row.variance * std::sqrt(2.0 / (m - 1.0));
    row.var_lo = row.variance - kZ99 * var_se;
    row.var_hi = row.variance + kZ99 * var_se;
    rows.push_back(row);
  }
  return rows;
}

ComponentVsExcursion component_vs_excursion(const GraphParams& params,
                                            double T, std::int64_t graph_runs,
                                            std::int64_t limit_runs, int top_j,
                                            double dt, std::uint64_t seed,
                                            int threads) {
  if (graph_runs < 1 || limit_runs < 1 || top_j < 1) {
    throw std::invalid_argument("component_vs_excursion: bad sample sizes");
  }
  const std::int64_t n = params.n();
  const std::int64_t budget = scaled_budget(n, T);
  if (budget > n) {
    throw std::runtime_error(
        "component_vs_excursion: budget exceeds the vertex count");
  }
  const double n23 = std::cbrt(static_cast<double>(n)) *
                     std::cbrt(static_cast<double>(n));
  auto tables = std::make_shared<const GraphTables>(params);

  ComponentVsExcursion result;
  result.graph_samples = Eigen::MatrixXd::Constant(
      graph_runs, top_j, std::numeric_limits<double>::quiet_NaN());

  std::vector<std::unique_ptr<ExploreWorkspace>> ws;
  for (int w = 0; w < std::max(threads, 1); ++w) {
    ws.push_back(std::make_unique<ExploreWorkspace>(tables));
  }
  run_indexed(graph_runs, threads, [&](int worker, std::int64_t run) {
    auto& work = *ws[static_cast<std::size_t>(worker)];
    Rng rng = derive_stream(seed, static_cast<std::uint64_t>(run),
                            StreamTag::kExplore);
    work.oracle.reset();
    explore_into(work.oracle, rng, budget, work.trace);
    const ComponentSizes comps = component_sizes(work.trace);
    for (int j = 0; j < top_j && j < static_cast<int>(comps.sizes.size());
         ++j) {
      result.graph_samples(run, j) =
          static_cast<double>(comps.sizes[static_cast<std::size_t>(j)]) / n23;
    }
  });

  result.limit_samples =
      sample_limit_components(T, dt, limit_runs, top_j, seed, threads);

  result.ks.resize(static_cast<std::size_t>(top_j));
  result.shortfall.assign(static_cast<std::size_t>(top_j), 0);
  std::vector<double> graph_col, limit_col;
  for (int j = 0; j < top_j; ++j) {
    graph_col.clear();
    for (std::int64_t i = 0; i < graph_runs; ++i) {
      const double v = result.graph_samples(i, j);
      if (std::isnan(v)) {
        ++result.shortfall[static_cast<std::size_t>(j)];
      } else {
        graph_col.push_back(v);
      }
    }
    limit_col.clear();
    for (std::int64_t i = 0; i < limit_runs; ++i) {
      limit_col.push_back(result.limit_samples.completed(i, j));
    }
    result.ks[static_cast<std::size_t>(j)] =
        graph_col.empty() ? 1.0 : ks_two_sample(graph_col, limit_col);
  }
  return result;
}

UniformityResult walker_uniformity(const GraphParams& params,
                                   std::int64_t from_step, std::int64_t at_step,
                                   std::int64_t runs, std::uint64_t seed,
                                   int threads) {
  const std::int64_t n = params.n();
  if (at_step < 1 || at_step > n) {
    throw std::invalid_argument("walker_uniformity: step out of range");
  }
  const auto separation = static_cast<std::int64_t>(
      std::ceil(std::pow(static_cast<double>(n), 1.0 / 6.0)));
  if (from_step > 0 && at_step - from_step < separation) {
    throw std::invalid_argument(
        "walker_uniformity: step separation below n^{1/6}");
  }
  auto tables = std::make_shared<const GraphTables>(params);

  const int workers = std::max(threads, 1);
  std::vector<std::unique_ptr<ExploreWorkspace>> ws;
  std::vector<std::vector<std::int64_t>> counts(
      static_cast<std::size_t>(workers),
      std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
  std::vector<std::vector<std::int64_t>> pair_counts = counts;
  for (int w = 0; w < workers; ++w) {
    ws.push_back(std::make_unique<ExploreWorkspace>(tables));
  }
  run_indexed(runs, threads, [&](int worker, std::int64_t run) {
    auto& work = *ws[static_cast<std::size_t>(worker)];
    Rng rng = derive_stream(seed, static_cast<std::uint64_t>(run),
                            StreamTag::kExplore);
    work.oracle.reset();
    explore_into(work.oracle, rng, at_step, work.trace);
    const std::uint32_t v =
        work.trace.processed[static_cast<std::size_t>(at_step) - 1];
    ++counts[static_cast<std::size_t>(worker)][v];
    // Paired uniform draw from an independent stream: the noise floor.
    Rng pair_rng = derive_stream(seed, static_cast<std::uint64_t>(run),
                                 StreamTag::kUniformPair);
    ++pair_counts[static_cast<std::size_t>(worker)]
                 [pair_rng.below(static_cast<std::uint32_t>(n))];
  });

  UniformityResult result;
  result.runs = runs;
  const double uniform = static_cast<double>(runs) / static_cast<double>(n);
  std::vector<std::int64_t> total(static_cast<std::size_t>(n), 0);
  double tv = 0.0, floor_tv = 0.0;
  for (std::int64_t v = 0; v < n; ++v) {
    std::int64_t c = 0, pc = 0;
    for (int w = 0; w < workers; ++w) {
      c += counts[static_cast<std::size_t>(w)][static_cast<std::size_t>(v)];
      pc += pair_counts[static_cast<std::size_t>(w)][static_cast<std::size_t>(v)];
    }
    total[static_cast<std::size_t>(v)] = c;
    tv += std::abs(static_cast<double>(c) - uniform);
    floor_tv += std::abs(static_cast<double>(pc) - uniform);
  }
  result.tv = 0.5 * tv / static_cast<double>(runs);
  result.noise_floor = 0.5 * floor_tv / static_cast<double>(runs);
  result.ratio = result.noise_floor > 0.0 ? result.tv / result.noise_floor
                                          : std::numeric_limits<double>::infinity();

  // Multinomial bootstrap over the observed cell counts (99% CI).
  const int resamples = 200;
  std::vector<double> boot(resamples);
  Rng brng = derive_stream(seed, 0, StreamTag::kBootstrap);
  for (int b = 0; b < resamples; ++b) {
    std::int64_t remaining = runs;
    double mass = 1.0;
    double btv = 0.0;
    for (std::int64_t v = 0; v < n; ++v) {
      const double pv =
          static_cast<double>(total[static_cast<std::size_t>(v)]) /
          static_cast<double>(runs);
      std::int64_t cv = 0;
      if (remaining > 0 && pv > 0.0) {
        cv = mass > pv ? binomial(brng, remaining, pv / mass) : remaining;
      }
      btv += std::abs(static_cast<double>(cv) - uniform);
      remaining -= cv;
      mass -= pv;
    }
    boot[b] = 0.5 * btv / static_cast<double>(runs);
  }
  std::sort(boot.begin(), boot.end());
  result.tv_lo = boot[static_cast<std::size_t>(0.005 * (resamples - 1))];
  result.tv_hi = boot[static_cast<std::size_t>(0.995 * (resamples - 1))];
  return result;
}

std::vector<GrowthRow> growth_bound_report(const GraphParams& params,
                                           std::int64_t runs, int k_max,
                                           double C, std::uint64_t seed,
                                           int threads) {
  if (!(C > std::exp(1.0))) {
    throw std::invalid_argument("growth_bound_report: C must exceed e");
  }
  auto tables = std::make_shared<const GraphTables>(params);
  const int workers = std::max(threads, 1);
  std::vector<std::unique_ptr<ExploreWorkspace>> ws;
  std::vector<std::vector<std::int64_t>> hits(
      static_cast<std::size_t>(workers),
      std::vector<std::int64_t>(static_cast<std::size_t>(k_max), 0));
  for (int w = 0; w < workers; ++w) {
    ws.push_back(std::make_unique<ExploreWorkspace>(tables));
  }
  run_indexed(runs, threads, [&](int worker, std::int64_t run) {
    auto& work = *ws[static_cast<std::size_t>(worker)];
    Rng rng = derive_stream(seed, static_cast<std::uint64_t>(run),
                            StreamTag::kExplore);
    work.oracle.reset();
    explore_into(work.oracle, rng, k_max, work.trace);
    for (int k = 1; k <= k_max && k <= work.trace.steps; ++k) {
      if (static_cast<double>(work.trace.i_size[k - 1]) >= C * k) {
        ++hits[static_cast<std::size_t>(worker)][static_cast<std::size_t>(k - 1)];
      }
    }
  });

  std::vector<GrowthRow> rows(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) {
    GrowthRow& row = rows[static_cast<std::size_t>(k - 1)];
    row.k = k;
    std::int64_t h = 0;
    for (int w = 0; w < workers; ++w) {
      h += hits[static_cast<std::size_t>(w)][static_cast<std::size_t>(k - 1)];
    }
    row.freq = static_cast<double>(h) / static_cast<double>(runs);
    row.bound = std::exp(-static_cast<double>(k) * (C - std::exp(1.0)));
    row.se = std::sqrt(row.bound * (1.0 - row.bound) /
                       static_cast<double>(runs));
    row.pass = row.freq <= row.bound + 3.0 * row.se;
  }
  return rows;
}

CampaignResult run_campaign(const GraphParams& params, double T,
                            std::span<const double> s_grid,
                            std::int64_t runs, std::int64_t limit_runs,
                            int top_j, double dt, std::uint64_t seed,
                            int threads) {
  CampaignResult result;
  result.params = params;
  result.T = T;
  result.dt = dt;
  result.runs = runs;
  result.limit_runs = limit_runs;
  result.top_j = top_j;
  result.seed = seed;
  result.s_grid.assign(s_grid.begin(), s_grid.end());
  result.moments = walk_moments(params, s_grid, runs, seed, threads);
  result.comparison = component_vs_excursion(params, T, runs, limit_runs,
                                             top_j, dt, seed, threads);
  return result;
}

}  // namespace gtorus
