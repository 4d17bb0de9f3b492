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

#include "gtorus/explore.hpp"

#include <algorithm>
#include <cmath>

namespace gtorus {

ComponentSizes component_sizes(const ExplorationTrace& trace) {
  const auto& z = trace.z;
  if (z.empty() || z.front() != 0) {
    throw std::invalid_argument("component_sizes: walk must start at z(1) = 0");
  }
  for (std::size_t k = 1; k < z.size(); ++k) {
    if (z[k] - z[k - 1] < -1) {
      throw std::invalid_argument("component_sizes: increment below -1");
    }
  }
  ComponentSizes out;
  std::int64_t last_tau = 1;  // tau_0, 1-based index into z
  std::int64_t next_level = -1;
  for (std::size_t k = 1; k < z.size(); ++k) {
    if (z[k] == next_level) {
      const auto tau = static_cast<std::int64_t>(k) + 1;
      out.sizes.push_back(tau - last_tau);
      last_tau = tau;
      --next_level;
    }
  }
  const auto end = static_cast<std::int64_t>(z.size());
  if (last_tau < end) {
    out.has_incomplete = true;
    out.incomplete_processed = end - last_tau;
  }
  std::sort(out.sizes.begin(), out.sizes.end(), std::greater<>());
  return out;
}

std::vector<std::pair<double, double>> rescale_walk(
    const ExplorationTrace& trace, std::span<const double> s_grid) {
  const double n13 = std::cbrt(static_cast<double>(trace.n));
  const double n23 = n13 * n13;
  std::vector<std::pair<double, double>> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) {
    if (s < 0.0) throw std::out_of_range("rescale_walk: negative s");
    const auto idx = 1 + static_cast<std::int64_t>(std::floor(n23 * s));
    if (idx > static_cast<std::int64_t>(trace.z.size())) {
      throw std::out_of_range("rescale_walk: grid point beyond budget");
    }
    out.emplace_back(s, static_cast<double>(trace.z[idx - 1]) / n13);
  }
  return out;
}

std::int64_t tree_distance(const ExplorationTrace& trace, std::int64_t i,
                           std::int64_t j) {
  if (i < 1 || j < 1 || i > trace.steps || j > trace.steps) {
    throw std::invalid_argument("tree_distance: step index out of range");
  }
  std::int64_t u = trace.processed[static_cast<std::size_t>(i) - 1];
  std::int64_t v = trace.processed[static_cast<std::size_t>(j) - 1];
  if (u == v) return 0;
  std::int64_t du = trace.depth[u];
  std::int64_t dv = trace.depth[v];
  std::int64_t dist = 0;
  while (du > dv) {
    u = trace.parent[u];
    --du;
    ++dist;
  }
  while (dv > du) {
    v = trace.parent[v];
    --dv;
    ++dist;
  }
  while (u != v) {
    if (trace.parent[u] < 0 || trace.parent[v] < 0) {
      return kInfiniteTreeDistance;  // distinct roots
    }
    u = trace.parent[u];
    v = trace.parent[v];
    dist += 2;
  }
  return dist;
}

}  // namespace gtorus
