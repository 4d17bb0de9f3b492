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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "gtorus/graph.hpp"
#include "gtorus/torus.hpp"

using namespace gtorus;

TEST_CASE("torus distance: direct evaluations") {
  CHECK(torus_distance({1, 1}, {9, 9}, 10) == 4);
  CHECK(torus_distance({3, 7}, {3, 7}, 11) == 0);
  CHECK(torus_distance({0, 0}, {5, 5}, 10) == 10);  // antipode on even side
  CHECK(torus_distance({0, 0}, {3, 3}, 7) == 6);    // odd side maximum N - 1
}

TEST_CASE("torus distance: symmetry and triangle inequality, exhaustive N=8") {
  const int N = 8;
  std::vector<TorusPoint> pts;
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) pts.push_back({x, y});
  for (const auto& u : pts) {
    for (const auto& v : pts) {
      const int duv = torus_distance(u, v, N);
      CHECK(duv == torus_distance(v, u, N));
      CHECK((duv == 0) == (u == v));
    }
  }
  for (const auto& u : pts)
    for (const auto& v : pts)
      for (const auto& w : pts) {
        CHECK(torus_distance(u, w, N) <=
              torus_distance(u, v, N) + torus_distance(v, w, N));
      }
}

TEST_CASE("torus distance: degenerate side and bad coordinates rejected") {
  CHECK_THROWS_AS(torus_distance({0, 0}, {1, 1}, 2), std::invalid_argument);
  CHECK_THROWS_AS(torus_distance({0, 5}, {1, 1}, 5), std::invalid_argument);
  CHECK_THROWS_AS(torus_distance({-1, 0}, {1, 1}, 5), std::invalid_argument);
}

TEST_CASE("ring sizes: piecewise formulas") {
  CHECK(ring_size(5, 2) == 8);
  CHECK(ring_size(10, 5) == 18);
  CHECK(ring_size(10, 10) == 1);
  CHECK(ring_size(7, 7) == 0);   // odd side: no distance-N class
  CHECK(ring_size(10, 0) == 0);
  CHECK(ring_size(10, 11) == 0);
}

TEST_CASE("ring sizes: partition of V_N minus the center") {
  for (int N : {3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 25, 101, 102}) {
    std::int64_t total = 0;
    for (int r = 1; r <= N; ++r) total += ring_size(N, r);
    CHECK(total == static_cast<std::int64_t>(N) * N - 1);
  }
}

TEST_CASE("ring sizes: brute-force count over all vertices, N <= 12") {
  for (int N = 3; N <= 12; ++N) {
    const TorusPoint center{0, 0};
    std::vector<std::int64_t> counted(static_cast<std::size_t>(N) + 1, 0);
    for (int x = 0; x < N; ++x) {
      for (int y = 0; y < N; ++y) {
        if (x == 0 && y == 0) continue;
        ++counted[torus_distance(center, {x, y}, N)];
      }
    }
    for (int r = 1; r <= N; ++r) CHECK(counted[r] == ring_size(N, r));
  }
}

TEST_CASE("enumerate_ring: unit neighbours and defining properties") {
  const auto unit = enumerate_ring({0, 0}, 1, 5);
  const std::set<std::pair<int, int>> got(
      [&] {
        std::set<std::pair<int, int>> s;
        for (auto p : unit) s.insert({p.x, p.y});
        return s;
      }());
  CHECK(got == std::set<std::pair<int, int>>{{1, 0}, {4, 0}, {0, 1}, {0, 4}});

  for (int N : {6, 7, 10}) {
    for (int r = 1; r <= N; ++r) {
      const TorusPoint center{2 % N, 5 % N};
      const auto ring = enumerate_ring(center, r, N);
      CHECK(static_cast<std::int64_t>(ring.size()) == ring_size(N, r));
      std::set<std::pair<int, int>> dedup;
      for (const auto& p : ring) {
        CHECK(torus_distance(center, p, N) == r);
        dedup.insert({p.x, p.y});
      }
      CHECK(dedup.size() == ring.size());
    }
  }
}

TEST_CASE("enumerate_ring: canonical order is offset-lexicographic") {
  const int N = 9, r = 3;
  const TorusPoint center{4, 7};
  const auto ring = enumerate_ring(center, r, N);
  std::vector<std::pair<int, int>> offsets;
  for (const auto& p : ring) {
    offsets.push_back({(p.x - center.x + N) % N, (p.y - center.y + N) % N});
  }
  CHECK(std::is_sorted(offsets.begin(), offsets.end()));
}

TEST_CASE("enumerate_ring: translation invariance and full cover") {
  const int N = 7;
  for (int r = 1; r < N; ++r) {
    const auto a = enumerate_ring({0, 0}, r, N);
    const auto b = enumerate_ring({3, 5}, r, N);
    CHECK(a.size() == b.size());
  }
  std::set<std::pair<int, int>> all;
  for (int r = 1; r <= N; ++r) {
    for (const auto& p : enumerate_ring({2, 2}, r, N)) all.insert({p.x, p.y});
  }
  CHECK(all.size() == static_cast<std::size_t>(N) * N - 1);
  CHECK(all.count({2, 2}) == 0);
}

TEST_CASE("edge probability: direct values") {
  const double c = critical_coupling();
  CHECK(edge_probability(100, 1, c, 1.0) ==
        doctest::Approx(3.60674e-3).epsilon(1e-5));
  CHECK(edge_probability(64, 0, c, 1.0) == 0.0);
  CHECK(edge_probability(10, 7, 0.5, 0.0) == doctest::Approx(0.005));
  CHECK(edge_probability(10, 3, 0.0, 1.0) == 0.0);
}

TEST_CASE("edge probability: clamp and domain errors") {
  CHECK(edge_probability(3, 1, 50.0, 1.0) == 1.0);
  CHECK_THROWS_AS(edge_probability(10, 1, 1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(edge_probability(10, 1, 1.0, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(edge_probability(10, 1, -0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(edge_probability(10, -1, 1.0, 1.0), std::invalid_argument);
  // At alpha = 1 the min{.,1} clamp never binds for c <= 1, N >= 3.
  for (int N = 3; N <= 40; ++N) {
    for (int r = 1; r <= N; ++r) {
      CHECK(edge_probability(N, r, 1.0, 1.0) < 1.0);
    }
  }
}

TEST_CASE("ring profile bundles size and probability") {
  const auto prof = ring_profile(10, 5, critical_coupling(), 1.0);
  CHECK(prof.size == 18);
  CHECK(prof.p == doctest::Approx(critical_coupling() / 50.0));
}
