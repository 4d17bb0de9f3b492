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

#include "gtorus/markov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gtorus {

namespace {

Eigen::VectorXd raw_row(const KernelSpec& spec, TorusPoint u,
                        const std::vector<bool>& forbidden_mask) {
  const int N = spec.params.N;
  const auto n = spec.n();
  Eigen::VectorXd row = Eigen::VectorXd::Zero(n);
  for (std::int64_t id = 0; id < n; ++id) {
    if (forbidden_mask[static_cast<std::size_t>(id)]) continue;
    const TorusPoint v{static_cast<std::int32_t>(id / N),
                       static_cast<std::int32_t>(id % N)};
    const int r = torus_distance(u, v, N);
    if (r == 0) continue;
    row[id] = edge_probability(N, r, spec.params.c, spec.params.alpha);
  }
  return row;
}

std::vector<bool> forbidden_mask(const KernelSpec& spec) {
  std::vector<bool> mask(static_cast<std::size_t>(spec.n()), false);
  for (std::uint32_t v : spec.forbidden) mask.at(v) = true;
  return mask;
}

Eigen::MatrixXd dense_kernel(const KernelSpec& spec, std::int64_t state_cap) {
  if (!spec.forbidden.empty()) {
    throw std::invalid_argument("dense kernel requires an empty forbidden set");
  }
  const auto n = spec.n();
  if (n > state_cap) {
    throw std::runtime_error("kernel state space exceeds the dense cap");
  }
  Eigen::MatrixXd P(n, n);
  const int N = spec.params.N;
  for (std::int64_t id = 0; id < n; ++id) {
    P.row(id) = kernel_row(spec, {static_cast<std::int32_t>(id / N),
                                  static_cast<std::int32_t>(id % N)});
  }
  return P;
}

}  // namespace

Eigen::VectorXd kernel_row(const KernelSpec& spec, TorusPoint u) {
  const auto mask = forbidden_mask(spec);
  const auto uid = static_cast<std::size_t>(
      static_cast<std::int64_t>(u.x) * spec.params.N + u.y);
  if (mask[uid]) {
    throw std::invalid_argument("kernel_row: start state is forbidden");
  }
  Eigen::VectorXd row = raw_row(spec, u, mask);
  const double z = row.sum();
  if (z <= 0.0) throw std::runtime_error("kernel_row: row has no mass");
  row /= z;
  return row;
}

double tv_distance(const Eigen::VectorXd& mu, const Eigen::VectorXd& nu) {
  if (mu.size() != nu.size()) {
    throw std::invalid_argument("tv_distance: dimension mismatch");
  }
  if (std::abs(mu.sum() - 1.0) > 1e-9 || std::abs(nu.sum() - 1.0) > 1e-9) {
    throw std::invalid_argument("tv_distance: inputs must sum to 1");
  }
  return 0.5 * (mu - nu).cwiseAbs().sum();
}

bool MixingReport::within_bound(int from_k) const {
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] >= from_k && max_tv[i] > bound[i]) return false;
  }
  return true;
}

MixingReport mixing_profile(const KernelSpec& spec, int k_max, int n_starts,
                            Rng& rng, std::int64_t state_cap) {
  const Eigen::MatrixXd P = dense_kernel(spec, state_cap);
  const auto n = spec.n();
  const Eigen::VectorXd pi = Eigen::VectorXd::Constant(n, 1.0 / double(n));

  MixingReport report;
  report.N = spec.params.N;
  report.c1 = spec.params.c / 2.0;
  report.k.resize(k_max);
  report.max_tv.assign(k_max, 0.0);
  report.bound.resize(k_max);
  for (int k = 1; k <= k_max; ++k) {
    report.k[k - 1] = k;
    report.bound[k - 1] = std::pow(1.0 - report.c1, k / 2.0 - 1.0);
  }

  // Start states sampled without replacement; by translation invariance the
  // per-k maximum over starts is constant across starts anyway.
  std::vector<std::uint32_t> starts;
  n_starts = static_cast<int>(std::min<std::int64_t>(n_starts, n));
  while (static_cast<int>(starts.size()) < n_starts) {
    const std::uint32_t u = rng.below(static_cast<std::uint32_t>(n));
    if (std::find(starts.begin(), starts.end(), u) == starts.end()) {
      starts.push_back(u);
    }
  }

  Eigen::RowVectorXd mu(n);
  for (std::uint32_t u : starts) {
    mu.setZero();
    mu[u] = 1.0;
    for (int k = 1; k <= k_max; ++k) {
      mu = mu * P;
      const double tv = 0.5 * (mu.transpose() - pi).cwiseAbs().sum();
      report.max_tv[k - 1] = std::max(report.max_tv[k - 1], tv);
    }
  }
  return report;
}

double return_probability(const KernelSpec& spec) {
  if (!spec.forbidden.empty()) {
    throw std::invalid_argument("return_probability requires empty A");
  }
  if (spec.params.c == 0.0) return 0.0;
  const double z = expected_degree_sum(spec.params);
  return second_moment_sum(spec.params) / (z * z);
}

DominanceReport two_step_dominance_check(const KernelSpec& spec, int k_max,
                                         std::int64_t n_pairs, Rng& rng,
                                         std::int64_t state_cap) {
  const Eigen::MatrixXd P = dense_kernel(spec, state_cap);
  const auto n = spec.n();
  const Eigen::MatrixXd P2 = P * P;
  const double r2 = P2(0, 0);  // translation invariant

  DominanceReport report;
  const double slack = r2 * 1e-12 + 1e-18;  // fp rounding headroom only
  if (n_pairs == 0) {
    Eigen::MatrixXd Pk = P2;
    for (int k = 2; k <= k_max; ++k) {
      if (k > 2) Pk = Pk * P;
      for (std::int64_t u = 0; u < n; ++u) {
        for (std::int64_t v = 0; v < n; ++v) {
          ++report.checked;
          const double excess = Pk(u, v) - r2;
          report.max_excess = std::max(report.max_excess, excess);
          if (excess > slack) ++report.violations;
        }
      }
    }
    return report;
  }

  for (std::int64_t i = 0; i < n_pairs; ++i) {
    const auto u = rng.below(static_cast<std::uint32_t>(n));
    const auto v = rng.below(static_cast<std::uint32_t>(n));
    Eigen::RowVectorXd mu = P.row(u);
    for (int k = 2; k <= k_max; ++k) {
      mu = mu * P;
      ++report.checked;
      const double excess = mu[v] - r2;
      report.max_excess = std::max(report.max_excess, excess);
      if (excess > slack) ++report.violations;
    }
  }
  return report;
}

KernelSampler::KernelSampler(const GraphParams& params)
    : tables_(std::make_shared<const GraphTables>(params)) {
  std::vector<double> weights;
  for (int r = 1; r <= tables_->max_r(); ++r) {
    const double w =
        tables_->ring_p(r) * static_cast<double>(tables_->ring_count(r));
    if (w > 0.0) {
      weights.push_back(w);
      alias_to_r_.push_back(r);
    }
  }
  if (weights.empty()) {
    throw std::invalid_argument("KernelSampler: kernel has no mass");
  }
  ring_alias_ = AliasTable(weights);
}

std::uint32_t KernelSampler::step(std::uint32_t u, Rng& rng) const {
  const int r = alias_to_r_[ring_alias_.sample(rng)];
  const auto pts = tables_->ring_points(r);
  return tables_->shift(u, pts[rng.below(static_cast<std::uint32_t>(pts.size()))]);
}

std::vector<std::uint32_t> restricted_walk_sample(const KernelSpec& spec,
                                                  std::int64_t length,
                                                  TorusPoint start,
                                                  const ForbiddenGrowth& growth,
                                                  Rng& rng) {
  return restricted_walk_sample(spec, KernelSampler(spec.params), length,
                                start, growth, rng);
}

std::vector<std::uint32_t> restricted_walk_sample(const KernelSpec& spec,
                                                  const KernelSampler& sampler,
                                                  std::int64_t length,
                                                  TorusPoint start,
                                                  const ForbiddenGrowth& growth,
                                                  Rng& rng) {
  const auto n = spec.n();
  std::vector<bool> blocked(static_cast<std::size_t>(n), false);
  std::int64_t blocked_count = 0;
  auto block = [&](std::uint32_t v) {
    if (!blocked[v]) {
      blocked[v] = true;
      ++blocked_count;
    }
  };
  for (std::uint32_t v : spec.forbidden) block(v);

  std::vector<std::uint32_t> trajectory;
  trajectory.reserve(static_cast<std::size_t>(length) + 1);
  const auto start_id = static_cast<std::uint32_t>(
      static_cast<std::int64_t>(start.x) * spec.params.N + start.y);
  trajectory.push_back(start_id);
  block(start_id);

  std::vector<std::uint32_t> added;
  for (std::int64_t i = 1; i <= length; ++i) {
    if (growth) {
      added.clear();
      growth(i, added);
      for (std::uint32_t v : added) block(v);
    }
    if (blocked_count >= n) {
      throw std::runtime_error("restricted_walk_sample: all states forbidden");
    }
    const std::uint32_t cur = trajectory.back();
    std::uint32_t next = 0;
    bool accepted = false;
    for (int attempt = 0; attempt < 256; ++attempt) {
      next = sampler.step(cur, rng);
      if (!blocked[next]) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Exact inverse-CDF fallback over the allowed part of the row; valid
      // because rejection failures are independent of the accepted value.
      const int N = spec.params.N;
      const TorusPoint cu{static_cast<std::int32_t>(cur / N),
                          static_cast<std::int32_t>(cur % N)};
      long double total = 0.0L;
      for (std::int64_t id = 0; id < n; ++id) {
        if (blocked[id] || id == cur) continue;
        const TorusPoint v{static_cast<std::int32_t>(id / N),
                           static_cast<std::int32_t>(id % N)};
        total += edge_probability(N, torus_distance(cu, v, N), spec.params.c,
                                  spec.params.alpha);
      }
      if (total <= 0.0L) {
        throw std::runtime_error("restricted_walk_sample: row has no mass");
      }
      const long double target = static_cast<long double>(rng.u01()) * total;
      long double acc = 0.0L;
      for (std::int64_t id = 0; id < n; ++id) {
        if (blocked[id] || id == cur) continue;
        const TorusPoint v{static_cast<std::int32_t>(id / N),
                           static_cast<std::int32_t>(id % N)};
        acc += edge_probability(N, torus_distance(cu, v, N), spec.params.c,
                                spec.params.alpha);
        if (acc > target) {
          next = static_cast<std::uint32_t>(id);
          break;
        }
        next = static_cast<std::uint32_t>(id);  // numeric tail guard
      }
    }
    trajectory.push_back(next);
    block(next);
  }
  return trajectory;
}

}  // namespace gtorus
