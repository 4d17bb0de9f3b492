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

#include "gtorus/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gtorus {

double critical_coupling() {
  static const double value = 1.0 / (4.0 * std::log(2.0));
  return value;
}

GraphParams::GraphParams(int side, double coupling, double decay)
    : N(side), c(coupling), alpha(decay) {
  if (side < 3) throw std::invalid_argument("GraphParams: N must be >= 3");
  if (!(coupling >= 0.0) || !std::isfinite(coupling)) {
    throw std::invalid_argument("GraphParams: c must be finite and >= 0");
  }
  if (decay < 0.0 || decay >= 2.0) {
    throw std::invalid_argument("GraphParams: alpha must lie in [0, 2)");
  }
}

GraphParams GraphParams::critical_at(int side, double decay) {
  GraphParams p(side, critical_coupling(), decay);
  p.critical = true;
  return p;
}

namespace {

long double edge_probability_l(int N, int r, long double c, double alpha) {
  if (r == 0 || c == 0.0L) return 0.0L;
  long double p;
  if (alpha == 1.0) {
    p = c / (static_cast<long double>(N) * r);
  } else if (alpha == 0.0) {
    p = c / (static_cast<long double>(N) * N);
  } else {
    p = c / (std::pow(static_cast<long double>(N), 2.0L - alpha) *
             std::pow(static_cast<long double>(r), static_cast<long double>(alpha)));
  }
  return p < 1.0L ? p : 1.0L;
}

}  // namespace

double expected_degree_sum(const GraphParams& params) {
  long double acc = 0.0L;
  for (int r = 1; r <= params.N; ++r) {
    const long double p = edge_probability_l(params.N, r, params.c, params.alpha);
    acc += p * static_cast<long double>(ring_size(params.N, r));
  }
  return static_cast<double>(acc);
}

double second_moment_sum(const GraphParams& params) {
  long double acc = 0.0L;
  for (int r = 1; r <= params.N; ++r) {
    const long double p = edge_probability_l(params.N, r, params.c, params.alpha);
    acc += p * p * static_cast<long double>(ring_size(params.N, r));
  }
  return static_cast<double>(acc);
}

double neighbor_prob_mass(TorusPoint v, std::span<const TorusPoint> A,
                          const GraphParams& params) {
  long double acc = 0.0L;
  for (const TorusPoint& u : A) {
    const int r = torus_distance(v, u, params.N);
    acc += edge_probability_l(params.N, r, params.c, params.alpha);
  }
  return static_cast<double>(acc);
}

GraphTables::GraphTables(const GraphParams& params) : params_(params) {
  const int N = params.N;
  max_r_ = N % 2 == 0 ? N : N - 1;
  start_.assign(static_cast<std::size_t>(max_r_) + 2, 0);
  // Counting pass, then a fill pass in (dx, dy) lexicographic order; that
  // order is the canonical ring enumeration.
  for (int dx = 0; dx < N; ++dx) {
    const int a = fold_distance(dx, N);
    for (int dy = 0; dy < N; ++dy) {
      if (dx == 0 && dy == 0) continue;
      ++start_[a + fold_distance(dy, N) + 1];
    }
  }
  for (int r = 1; r <= max_r_ + 1; ++r) start_[r] += start_[r - 1];
  pts_.resize(static_cast<std::size_t>(params.n()) - 1);
  std::vector<std::int64_t> cursor(start_.begin(), start_.end() - 1);
  for (int dx = 0; dx < N; ++dx) {
    const int a = fold_distance(dx, N);
    for (int dy = 0; dy < N; ++dy) {
      if (dx == 0 && dy == 0) continue;
      const int r = a + fold_distance(dy, N);
      pts_[cursor[r]++] = static_cast<std::uint32_t>(dx) * N + dy;
    }
  }
  p_.assign(max_r_ + 1, 0.0);
  s0_.assign(max_r_ + 1, 1.0);
  pq_.assign(max_r_ + 1, 0.0);
  for (int r = 1; r <= max_r_; ++r) {
    const long double p = edge_probability_l(N, r, params.c, params.alpha);
    p_[r] = static_cast<double>(p);
    const std::int64_t nr = ring_count(r);
    if (p <= 0.0L) {
      s0_[r] = 1.0;
    } else if (p >= 1.0L) {
      s0_[r] = 0.0;
      pq_[r] = std::numeric_limits<double>::infinity();
    } else {
      s0_[r] = static_cast<double>(std::exp(static_cast<long double>(nr) *
                                            std::log1p(-p)));
      pq_[r] = static_cast<double>(p / (1.0L - p));
    }
  }
}

RevealOracle::RevealOracle(std::shared_ptr<const GraphTables> tables)
    : tables_(std::move(tables)) {
  const auto size = static_cast<std::size_t>(tables_->n());
  used_epoch_.assign(size, 0);
  processed_epoch_.assign(size, 0);
  used_at_.assign(size, 0);
  processed_at_.assign(size, 0);
  epoch_ = 0;
  reset();
}

void RevealOracle::reset() {
  ++epoch_;
  if (epoch_ == 0) {  // epoch counter wrapped; clear stamps and restart
    std::fill(used_epoch_.begin(), used_epoch_.end(), 0u);
    std::fill(processed_epoch_.begin(), processed_epoch_.end(), 0u);
    epoch_ = 1;
  }
  step_ = 0;
  used_n_ = 0;
  edges_.clear();
}

void RevealOracle::reveal(std::uint32_t v, Rng& rng,
                          std::vector<std::uint32_t>& out) {
  if (is_processed(v)) {
    throw std::logic_error("RevealOracle: vertex processed twice");
  }
  ++step_;
  processed_epoch_[v] = epoch_;
  processed_at_[v] = step_;
  mark_used(v);
  const GraphTables& tab = *tables_;
  for (int r = 1; r <= tab.max_r(); ++r) {
    const double p = tab.ring_p(r);
    if (p <= 0.0) continue;
    const std::int64_t nr = tab.ring_count(r);
    std::int64_t hits;
    if (p >= 1.0) {
      hits = nr;
    } else {
      hits = binomial_precomp(rng, nr, tab.ring_s0(r), tab.ring_pq(r));
    }
    if (hits == 0) continue;
    const auto pts = tab.ring_points(r);
    pick_buf_.clear();
    if (2 * hits >= nr) {
      // Dense draw: partial Fisher-Yates over the whole ring.
      scratch_.resize(static_cast<std::size_t>(nr));
      for (std::int64_t i = 0; i < nr; ++i)
        scratch_[i] = static_cast<std::uint32_t>(i);
      for (std::int64_t i = 0; i < hits; ++i) {
        const std::int64_t j =
            i + rng.below(static_cast<std::uint32_t>(nr - i));
        std::swap(scratch_[i], scratch_[j]);
        pick_buf_.push_back(scratch_[i]);
      }
    } else {
      // Sparse draw: rejection against the few indices taken so far.
      while (static_cast<std::int64_t>(pick_buf_.size()) < hits) {
        const std::uint32_t idx = rng.below(static_cast<std::uint32_t>(nr));
        bool dup = false;
        for (std::uint32_t seen : pick_buf_) {
          if (seen == idx) {
            dup = true;
            break;
          }
        }
        if (!dup) pick_buf_.push_back(idx);
      }
    }
    for (std::uint32_t idx : pick_buf_) {
      const std::uint32_t u = tab.shift(v, pts[idx]);
      if (is_used(u)) continue;  // settled earlier or never queried again
      mark_used(u);
      edges_.emplace_back(v, u);
      out.push_back(u);
    }
  }
}

std::optional<bool> RevealOracle::pair_status(std::uint32_t u,
                                              std::uint32_t v) const {
  if (u == v) return std::nullopt;
  for (const auto& [a, b] : edges_) {
    if ((a == u && b == v) || (a == v && b == u)) return true;
  }
  if (is_processed(u) && used_step(v) >= processed_at_[u]) return false;
  if (is_processed(v) && used_step(u) >= processed_at_[v]) return false;
  return std::nullopt;
}

std::vector<std::vector<std::uint32_t>> AdjacencyGraph::neighbor_lists() const {
  std::vector<std::vector<std::uint32_t>> adj(static_cast<std::size_t>(n()));
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

void AdjacencyGraph::save(std::ostream& os) const {
  os.precision(17);
  os << "N " << N << " c " << c << " alpha " << alpha << " seed " << seed
     << "\n";
  for (const auto& [u, v] : edges) {
    os << u / N << ' ' << u % N << ' ' << v / N << ' ' << v % N << "\n";
  }
}

AdjacencyGraph AdjacencyGraph::load(std::istream& is) {
  AdjacencyGraph g;
  std::string key;
  if (!(is >> key) || key != "N" || !(is >> g.N) || !(is >> key) ||
      key != "c" || !(is >> g.c) || !(is >> key) || key != "alpha" ||
      !(is >> g.alpha) || !(is >> key) || key != "seed" || !(is >> g.seed)) {
    throw std::runtime_error("AdjacencyGraph::load: malformed header");
  }
  g.degree.assign(static_cast<std::size_t>(g.n()), 0);
  int x1, y1, x2, y2;
  while (is >> x1 >> y1 >> x2 >> y2) {
    auto u = static_cast<std::uint32_t>(x1) * g.N + y1;
    auto v = static_cast<std::uint32_t>(x2) * g.N + y2;
    if (u > v) std::swap(u, v);
    g.edges.emplace_back(u, v);
    ++g.degree[u];
    ++g.degree[v];
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

AdjacencyGraph materialize_graph(const GraphParams& params, Rng& rng,
                                 std::uint64_t seed_label, int side_cap) {
  if (params.N > side_cap) {
    throw std::runtime_error("materialize_graph: side cap exceeded");
  }
  AdjacencyGraph g;
  g.N = params.N;
  g.c = params.c;
  g.alpha = params.alpha;
  g.seed = seed_label;
  const auto n = static_cast<std::uint32_t>(params.n());
  g.degree.assign(n, 0);
  // Probability lookup per distance class.
  std::vector<double> p_by_r(static_cast<std::size_t>(2 * params.N) + 1, 0.0);
  for (int r = 1; r <= params.N; ++r) {
    p_by_r[r] = edge_probability(params.N, r, params.c, params.alpha);
  }
  const int N = params.N;
  for (std::uint32_t u = 0; u < n; ++u) {
    const TorusPoint pu{static_cast<std::int32_t>(u / N),
                        static_cast<std::int32_t>(u % N)};
    for (std::uint32_t v = u + 1; v < n; ++v) {
      const TorusPoint pv{static_cast<std::int32_t>(v / N),
                          static_cast<std::int32_t>(v % N)};
      const double p = p_by_r[torus_distance(pu, pv, N)];
      if (p > 0.0 && rng.u01() < p) {
        g.edges.emplace_back(u, v);
        ++g.degree[u];
        ++g.degree[v];
      }
    }
  }
  return g;
}

}  // namespace gtorus
