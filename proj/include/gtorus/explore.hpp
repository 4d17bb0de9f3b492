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

#ifndef GTORUS_EXPLORE_HPP_
#define GTORUS_EXPLORE_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gtorus/graph.hpp"
#include "gtorus/rng.hpp"

namespace gtorus {

constexpr std::int64_t kInfiniteTreeDistance =
    std::numeric_limits<std::int64_t>::max();

/// Record of one breadth-first exploration: the walk z, per-step revealed
/// counts, used-set sizes, processed vertices, roots, and the revealed
/// forest (parent links and depths).
struct ExplorationTrace {
  int N = 0;
  std::int64_t n = 0;
  std::int64_t budget = 0;
  std::int64_t steps = 0;
  bool exhausted = false;  // every vertex used before the budget ran out

  std::vector<std::int64_t> z;          // z[k-1] = z(k), k = 1 .. steps+1
  std::vector<std::int32_t> revealed;   // |N(v_k, k)| per step
  std::vector<std::int64_t> i_size;     // |I_k| per step
  std::vector<std::uint32_t> processed; // v_1 .. v_steps
  std::vector<std::pair<std::uint32_t, std::int64_t>> roots;  // (vertex, step)
  std::vector<std::int32_t> parent;     // per vertex, -1 if root or unused
  std::vector<std::int32_t> depth;      // per vertex, -1 if unused
};

/// Component sizes recovered from the walk via the hitting times of -m.
struct ComponentSizes {
  std::vector<std::int64_t> sizes;  // completed components, descending
  std::int64_t incomplete_processed = 0;  // steps spent in the cut component
  bool has_incomplete = false;
};

/// Oracle over an eagerly materialized graph; same interface as
/// RevealOracle so the exploration runs unchanged on either.
class AdjacencyOracle {
 public:
  explicit AdjacencyOracle(const AdjacencyGraph& graph)
      : n_(graph.n()), adj_(graph.neighbor_lists()) {
    used_epoch_.assign(static_cast<std::size_t>(n_), 0);
    processed_epoch_.assign(static_cast<std::size_t>(n_), 0);
    reset();
  }

  void reset() {
    ++epoch_;
    if (epoch_ == 0) {
      std::fill(used_epoch_.begin(), used_epoch_.end(), 0u);
      std::fill(processed_epoch_.begin(), processed_epoch_.end(), 0u);
      epoch_ = 1;
    }
    used_n_ = 0;
  }

  std::int64_t n() const { return n_; }
  std::int64_t used_count() const { return used_n_; }
  bool is_used(std::uint32_t v) const { return used_epoch_[v] == epoch_; }

  void reveal(std::uint32_t v, Rng&, std::vector<std::uint32_t>& out) {
    if (processed_epoch_[v] == epoch_) {
      throw std::logic_error("AdjacencyOracle: vertex processed twice");
    }
    processed_epoch_[v] = epoch_;
    mark_used(v);
    for (std::uint32_t u : adj_[v]) {
      if (is_used(u)) continue;
      mark_used(u);
      out.push_back(u);
    }
  }

 private:
  void mark_used(std::uint32_t v) {
    if (used_epoch_[v] != epoch_) {
      used_epoch_[v] = epoch_;
      ++used_n_;
    }
  }

  std::int64_t n_ = 0;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::uint32_t> used_epoch_, processed_epoch_;
  std::uint32_t epoch_ = 0;
  std::int64_t used_n_ = 0;
};

/// Breadth-first exploration. Case I processes the oldest generation of the
/// active set in a uniformly shuffled order (the permutation of a generation
/// is fixed the moment the generation completes, which realizes the uniform
/// minimum-depth choice); Case II picks a uniform unexplored root. Runs for
/// `budget` steps or until every vertex is used.
template <class Oracle>
void explore_into(Oracle& oracle, Rng& rng, std::int64_t budget,
                  ExplorationTrace& trace) {
  const std::int64_t n = oracle.n();
  if (budget < 1 || budget > n) {
    throw std::invalid_argument("explore: budget must lie in [1, n]");
  }
  if (oracle.used_count() != 0) {
    throw std::logic_error("explore: oracle is not fresh");
  }

  trace.n = n;
  trace.budget = budget;
  trace.exhausted = false;
  trace.z.clear();
  trace.z.reserve(static_cast<std::size_t>(budget) + 1);
  trace.z.push_back(0);
  trace.revealed.clear();
  trace.i_size.clear();
  trace.processed.clear();
  trace.roots.clear();
  trace.parent.assign(static_cast<std::size_t>(n), -1);
  trace.depth.assign(static_cast<std::size_t>(n), -1);

  std::vector<std::uint32_t> current, next, reveal_buf;
  std::size_t pos = 0;

  for (std::int64_t k = 1; k <= budget; ++k) {
    std::uint32_t v;
    if (pos < current.size()) {
      v = current[pos++];
    } else if (!next.empty()) {
      // The generation is complete: fix a uniform order for it.
      for (std::size_t i = next.size() - 1; i > 0; --i) {
        const auto j = rng.below(static_cast<std::uint32_t>(i + 1));
        std::swap(next[i], next[j]);
      }
      current.swap(next);
      next.clear();
      pos = 0;
      v = current[pos++];
    } else {
      if (oracle.used_count() == n) {
        trace.exhausted = true;
        break;
      }
      do {
        v = rng.below(static_cast<std::uint32_t>(n));
      } while (oracle.is_used(v));
      trace.roots.emplace_back(v, k);
      trace.depth[v] = 0;
    }

    reveal_buf.clear();
    oracle.reveal(v, rng, reveal_buf);
    for (std::uint32_t u : reveal_buf) {
      trace.parent[u] = static_cast<std::int32_t>(v);
      trace.depth[u] = trace.depth[v] + 1;
      next.push_back(u);
    }
    trace.z.push_back(trace.z.back() - 1 +
                      static_cast<std::int64_t>(reveal_buf.size()));
    trace.revealed.push_back(static_cast<std::int32_t>(reveal_buf.size()));
    trace.i_size.push_back(oracle.used_count());
    trace.processed.push_back(v);
  }
  trace.steps = static_cast<std::int64_t>(trace.revealed.size());
}

template <class Oracle>
ExplorationTrace explore(Oracle& oracle, Rng& rng, std::int64_t budget) {
  ExplorationTrace trace;
  explore_into(oracle, rng, budget, trace);
  return trace;
}

/// Completed component sizes from the hitting times tau_m of z = -m
/// (C_m = tau_m - tau_{m-1}, tau_0 = 1), sorted descending. A component cut
/// by the budget is flagged and excluded. Rejects walks with an increment
/// below -1.
ComponentSizes component_sizes(const ExplorationTrace& trace);

/// Rescaled walk n^{-1/3} z(1 + floor(n^{2/3} s)) on the given grid.
/// Throws std::out_of_range for grid points beyond the recorded budget.
std::vector<std::pair<double, double>> rescale_walk(
    const ExplorationTrace& trace, std::span<const double> s_grid);

/// Tree distance between the vertices processed at steps i and j (1-based),
/// via nearest common ancestor in the revealed forest;
/// kInfiniteTreeDistance for different trees.
std::int64_t tree_distance(const ExplorationTrace& trace, std::int64_t i,
                           std::int64_t j);

}  // namespace gtorus

#endif  // GTORUS_EXPLORE_HPP_
