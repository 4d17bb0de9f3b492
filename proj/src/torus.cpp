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

#include "gtorus/torus.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gtorus {

namespace {

void require_side(int N) {
  if (N < 3) {
    throw std::invalid_argument("torus side N must be at least 3, got " +
                                std::to_string(N));
  }
}

void require_coord(TorusPoint p, int N) {
  if (p.x < 0 || p.x >= N || p.y < 0 || p.y >= N) {
    throw std::invalid_argument("torus coordinates must lie in [0, N)");
  }
}

}  // namespace

int fold_distance(int i, int N) {
  return i <= N / 2 ? i : N - i;
}

int torus_distance(TorusPoint u, TorusPoint v, int N) {
  require_side(N);
  require_coord(u, N);
  require_coord(v, N);
  const int dx = u.x >= v.x ? u.x - v.x : u.x - v.x + N;
  const int dy = u.y >= v.y ? u.y - v.y : u.y - v.y + N;
  return fold_distance(dx, N) + fold_distance(dy, N);
}

std::int64_t ring_size(int N, int r) {
  require_side(N);
  if (r < 1 || r > N) return 0;
  if (N % 2 == 1) {
    if (2 * r < N) return 4LL * r;
    if (r < N) return 4LL * (N - r);
    return 0;  // odd N: maximum distance is N - 1
  }
  if (2 * r < N) return 4LL * r;
  if (2 * r == N) return 4LL * r - 2;
  if (r < N) return 4LL * (N - r);
  return 1;  // even N: the single antipodal vertex
}

std::vector<TorusPoint> enumerate_ring(TorusPoint center, int r, int N) {
  require_side(N);
  require_coord(center, N);
  std::vector<TorusPoint> out;
  if (r < 1 || r > N) return out;
  out.reserve(static_cast<std::size_t>(ring_size(N, r)));
  const int fold_max = N / 2;
  for (int dx = 0; dx < N; ++dx) {
    const int a = fold_distance(dx, N);
    const int b = r - a;
    if (b < 0 || b > fold_max) continue;
    // dy offsets realizing fold(dy) == b, ascending: b, then N - b.
    const int lo = b;
    const int hi = (N - b) % N;
    if (fold_distance(lo, N) == b) {
      out.push_back({static_cast<std::int32_t>((center.x + dx) % N),
                     static_cast<std::int32_t>((center.y + lo) % N)});
    }
    if (hi != lo && fold_distance(hi, N) == b) {
      out.push_back({static_cast<std::int32_t>((center.x + dx) % N),
                     static_cast<std::int32_t>((center.y + hi) % N)});
    }
  }
  return out;
}

double edge_probability(int N, int r, double c, double alpha) {
  require_side(N);
  if (c < 0.0 || !std::isfinite(c)) {
    throw std::invalid_argument("coupling c must be finite and >= 0");
  }
  if (alpha < 0.0 || alpha >= 2.0) {
    throw std::invalid_argument("decay exponent alpha must lie in [0, 2)");
  }
  if (r < 0) throw std::invalid_argument("distance class r must be >= 0");
  if (r == 0 || c == 0.0) return 0.0;
  double p;
  if (alpha == 1.0) {
    p = c / (static_cast<double>(N) * r);
  } else if (alpha == 0.0) {
    p = c / (static_cast<double>(N) * N);
  } else {
    p = c / (std::pow(static_cast<double>(N), 2.0 - alpha) *
             std::pow(static_cast<double>(r), alpha));
  }
  return p < 1.0 ? p : 1.0;
}

RingProfile ring_profile(int N, int r, double c, double alpha) {
  return RingProfile{N, r, ring_size(N, r), edge_probability(N, r, c, alpha)};
}

}  // namespace gtorus
