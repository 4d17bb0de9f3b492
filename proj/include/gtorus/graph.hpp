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

#ifndef GTORUS_GRAPH_HPP_
#define GTORUS_GRAPH_HPP_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gtorus/rng.hpp"
#include "gtorus/torus.hpp"

namespace gtorus {

/// The critical coupling 1 / (4 log 2).
double critical_coupling();

/// Parameters of the random graph on the N x N torus with connection
/// probabilities min{ c / (N^{2-alpha} rho^alpha), 1 }.
struct GraphParams {
  int N = 0;
  double c = 0.0;
  double alpha = 1.0;
  bool critical = false;

  GraphParams() = default;
  GraphParams(int side, double coupling, double decay = 1.0);

  /// Parameters at the critical coupling c = 1 / (4 log 2).
  static GraphParams critical_at(int side, double decay = 1.0);

  std::int64_t n() const { return static_cast<std::int64_t>(N) * N; }
};

/// Exact sum over distance classes of p_r N_r (the expected degree),
/// accumulated in extended precision. Asymptotics for alpha = 1:
/// 4c log 2 - 2c/N - c/N^2 + O(1/N^4) for odd N (2c/N^2 for even N).
double expected_degree_sum(const GraphParams& params);

/// Exact sum of N_r p_r^2; asymptotically 4 c^2 log N / N^2 + O(1/N^2)
/// for alpha = 1.
double second_moment_sum(const GraphParams& params);

/// Sum of p(v, u) over u in A. Always within [c|A|/N^2, 4c sqrt(|A|)/N].
double neighbor_prob_mass(TorusPoint v, std::span<const TorusPoint> A,
                          const GraphParams& params);

/// Immutable per-(N, c, alpha) geometry and sampling tables: canonical ring
/// membership plus the binomial precomputation for every distance class.
/// Shared between any number of concurrent oracles.
class GraphTables {
 public:
  explicit GraphTables(const GraphParams& params);

  const GraphParams& params() const { return params_; }
  int N() const { return params_.N; }
  std::int64_t n() const { return params_.n(); }
  int max_r() const { return max_r_; }

  std::span<const std::uint32_t> ring_points(int r) const {
    return {pts_.data() + start_[r], pts_.data() + start_[r + 1]};
  }
  std::int64_t ring_count(int r) const { return start_[r + 1] - start_[r]; }
  double ring_p(int r) const { return p_[r]; }
  double ring_s0(int r) const { return s0_[r]; }
  double ring_pq(int r) const { return pq_[r]; }

  std::uint32_t encode(TorusPoint p) const {
    return static_cast<std::uint32_t>(p.x) * params_.N + p.y;
  }
  TorusPoint decode(std::uint32_t id) const {
    return {static_cast<std::int32_t>(id / params_.N),
            static_cast<std::int32_t>(id % params_.N)};
  }
  /// Vertex at `v` shifted by the ring offset `off` (both encoded).
  std::uint32_t shift(std::uint32_t v, std::uint32_t off) const {
    const int N = params_.N;
    int x = static_cast<int>(v / N) + static_cast<int>(off / N);
    int y = static_cast<int>(v % N) + static_cast<int>(off % N);
    if (x >= N) x -= N;
    if (y >= N) y -= N;
    return static_cast<std::uint32_t>(x) * N + y;
  }

 private:
  GraphParams params_;
  int max_r_ = 0;
  std::vector<std::int64_t> start_;   // per-r slice of pts_, r in [0, max_r]
  std::vector<std::uint32_t> pts_;    // encoded offsets, canonical order
  std::vector<double> p_, s0_, pq_;   // per-r edge probability tables
};

constexpr std::int64_t kStepNone = std::numeric_limits<std::int64_t>::max();

/// Lazy edge-revelation oracle. Each unordered pair's indicator is settled
/// at most once over a lifetime; reveal() samples full rings (count
/// Bin(N_r, p_r), members uniform without replacement) and discards hits at
/// already-used vertices. A discarded indicator is either already settled
/// by an earlier step (the ledger is never overwritten) or is never queried
/// again by the exploration, so discarding introduces no bias.
///
/// Single consumer per lifetime; independent oracles may run in parallel.
class RevealOracle {
 public:
  explicit RevealOracle(std::shared_ptr<const GraphTables> tables);

  /// Starts a fresh lifetime, reusing internal buffers.
  void reset();

  std::int64_t n() const { return tables_->n(); }
  const GraphTables& tables() const { return *tables_; }
  std::int64_t steps() const { return step_; }
  std::int64_t used_count() const { return used_n_; }

  bool is_used(std::uint32_t v) const { return used_epoch_[v] == epoch_; }
  bool is_processed(std::uint32_t v) const {
    return processed_epoch_[v] == epoch_;
  }
  /// Step at which v entered the used set, or kStepNone.
  std::int64_t used_step(std::uint32_t v) const {
    return is_used(v) ? used_at_[v] : kStepNone;
  }

  /// Reveals the neighbours of v among the currently available vertices and
  /// appends them to `out`. Marks v processed (and used). Throws
  /// std::logic_error if v was processed before in this lifetime.
  void reveal(std::uint32_t v, Rng& rng, std::vector<std::uint32_t>& out);

  /// Ledger view of an unordered pair: true/false once the indicator is
  /// settled, nullopt while it is still undetermined.
  std::optional<bool> pair_status(std::uint32_t u, std::uint32_t v) const;

 private:
  void mark_used(std::uint32_t v) {
    if (used_epoch_[v] != epoch_) {
      used_epoch_[v] = epoch_;
      used_at_[v] = step_;
      ++used_n_;
    }
  }

  std::shared_ptr<const GraphTables> tables_;
  std::uint32_t epoch_ = 0;
  std::int64_t step_ = 0;
  std::int64_t used_n_ = 0;
  std::vector<std::uint32_t> used_epoch_, processed_epoch_;
  std::vector<std::int64_t> used_at_, processed_at_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
  std::vector<std::uint32_t> pick_buf_, scratch_;
};

/// Eagerly realized graph, for brute-force oracles on small tori.
struct AdjacencyGraph {
  int N = 0;
  double c = 0.0;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // sorted (u < v)
  std::vector<std::int32_t> degree;

  std::int64_t n() const { return static_cast<std::int64_t>(N) * N; }
  std::vector<std::vector<std::uint32_t>> neighbor_lists() const;

  /// Edge-list text format: header "N <N> c <c> alpha <alpha> seed <seed>",
  /// then one "x1 y1 x2 y2" line per edge.
  void save(std::ostream& os) const;
  static AdjacencyGraph load(std::istream& is);
};

/// Samples every unordered pair independently. O(N^4) pair scan, guarded by
/// `side_cap` (default 64).
AdjacencyGraph materialize_graph(const GraphParams& params, Rng& rng,
                                 std::uint64_t seed_label = 0,
                                 int side_cap = 64);

}  // namespace gtorus

#endif  // GTORUS_GRAPH_HPP_
