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

#ifndef GTORUS_TORUS_HPP_
#define GTORUS_TORUS_HPP_

#include <cstdint>
#include <vector>

namespace gtorus {

/// Point on the N x N discrete torus, coordinates reduced mod N.
struct TorusPoint {
  std::int32_t x = 0;
  std::int32_t y = 0;

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

/// One distance class of the torus: its size N_r and edge probability p_r.
struct RingProfile {
  int N = 0;
  int r = 0;
  std::int64_t size = 0;
  double p = 0.0;
};

/// Per-coordinate folded distance min(i, N - i) for i in [0, N).
int fold_distance(int i, int N);

/// L1 torus distance rho(u, v) = fold(u.x - v.x) + fold(u.y - v.y).
/// Symmetric, zero iff u == v; maximum N for even N, N - 1 for odd N.
int torus_distance(TorusPoint u, TorusPoint v, int N);

/// Number of vertices at distance exactly r from any fixed vertex.
/// Returns 0 for r outside the support ([1, N-1] odd N, [1, N] even N).
std::int64_t ring_size(int N, int r);

/// All vertices at distance r from `center`, in canonical order:
/// increasing first-coordinate offset, then increasing second-coordinate
/// offset (offsets taken in [0, N)). Deterministic, duplicate-free.
std::vector<TorusPoint> enumerate_ring(TorusPoint center, int r, int N);

/// Connection probability min{ c / (N^{2-alpha} r^alpha), 1 }.
/// r = 0 maps to probability 0 (no loops). Requires c >= 0, alpha in [0, 2).
double edge_probability(int N, int r, double c, double alpha);

RingProfile ring_profile(int N, int r, double c, double alpha);

}  // namespace gtorus

#endif  // GTORUS_TORUS_HPP_
