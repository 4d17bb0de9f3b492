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

#include <cmath>
#include <set>

#include "gtorus/markov.hpp"

using namespace gtorus;

TEST_CASE("kernel rows are stochastic with a zero diagonal") {
  const KernelSpec spec(GraphParams::critical_at(5));
  for (int x = 0; x < 5; ++x) {
    const auto row = kernel_row(spec, {x, (x * 2) % 5});
    CHECK(std::abs(row.sum() - 1.0) <= 1e-12);
    CHECK(row[x * 5 + (x * 2) % 5] == 0.0);
    CHECK(row.minCoeff() >= 0.0);
  }
  // Entries scale like 1/r at alpha = 1: distance 1 vs distance 2.
  const auto row = kernel_row(spec, {0, 0});
  CHECK(row[1] == doctest::Approx(2.0 * row[2]).epsilon(1e-12));
}

TEST_CASE("kernel row with forbidden set renormalizes and rejects bad start") {
  const GraphParams params = GraphParams::critical_at(6);
  KernelSpec plain(params);
  KernelSpec restricted(params, {1, 2, 3});
  CHECK_THROWS_AS(kernel_row(restricted, {0, 1}), std::invalid_argument);
  const auto p = kernel_row(plain, {0, 0});
  const auto pa = kernel_row(restricted, {0, 0});
  CHECK(std::abs(pa.sum() - 1.0) <= 1e-12);
  for (std::uint32_t v : {1u, 2u, 3u}) CHECK(pa[v] == 0.0);
  // Removing mass from the normalizer can only inflate surviving entries.
  for (int v = 4; v < 36; ++v) {
    if (p[v] > 0.0) CHECK(pa[v] >= p[v] - 1e-15);
  }
}

TEST_CASE("total variation distance basics") {
  Eigen::VectorXd mu(2), nu(2);
  mu << 0.5, 0.5;
  nu << 1.0, 0.0;
  CHECK(tv_distance(mu, mu) == 0.0);
  CHECK(tv_distance(mu, nu) == doctest::Approx(0.5));
  Eigen::VectorXd a(3), b(3);
  a << 1, 0, 0;
  b << 0, 0, 1;
  CHECK(tv_distance(a, b) == doctest::Approx(1.0));
  Eigen::VectorXd bad(2);
  bad << 0.9, 0.9;
  CHECK_THROWS_AS(tv_distance(mu, bad), std::invalid_argument);
  Eigen::VectorXd other(3);
  other << 1, 0, 0;
  CHECK_THROWS_AS(tv_distance(mu, other), std::invalid_argument);
}

TEST_CASE("kernel is symmetric and doubly stochastic on small tori") {
  const KernelSpec spec(GraphParams::critical_at(5));
  Eigen::MatrixXd P(25, 25);
  for (int id = 0; id < 25; ++id) {
    P.row(id) = kernel_row(spec, {id / 5, id % 5});
  }
  CHECK((P - P.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
  for (int v = 0; v < 25; ++v) {
    CHECK(std::abs(P.col(v).sum() - 1.0) <= 1e-12);
  }
}

TEST_CASE("mixing profile: bound holds and the tail decays") {
  const KernelSpec spec(GraphParams::critical_at(9));
  Rng rng(17);
  const auto report = mixing_profile(spec, 20, 8, rng);
  CHECK(report.within_bound(2));
  CHECK(report.c1 == doctest::Approx(critical_coupling() / 2.0));
  for (std::size_t i = 1; i < report.max_tv.size(); ++i) {
    CHECK(report.max_tv[i] <= report.max_tv[i - 1] + 1e-12);
    CHECK(report.max_tv[i] >= 0.0);
    CHECK(report.max_tv[i] <= 1.0);
  }
  // Stationarity of the uniform law: one application of P keeps pi.
  Eigen::MatrixXd P(81, 81);
  for (int id = 0; id < 81; ++id) P.row(id) = kernel_row(spec, {id / 9, id % 9});
  Eigen::VectorXd pi = Eigen::VectorXd::Constant(81, 1.0 / 81.0);
  CHECK(((P.transpose() * pi) - pi).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("mixing profile rejects an oversized state space") {
  const KernelSpec spec(GraphParams::critical_at(64));
  Rng rng(3);
  CHECK_THROWS_AS(mixing_profile(spec, 5, 4, rng), std::runtime_error);
}

TEST_CASE("return probability: limit, identity, and dense agreement") {
  CHECK(return_probability(KernelSpec(GraphParams(20, 0.0))) == 0.0);

  const KernelSpec spec(GraphParams::critical_at(30));
  const double z = expected_degree_sum(spec.params);
  CHECK(return_probability(spec) ==
        doctest::Approx(second_moment_sum(spec.params) / (z * z))
            .epsilon(1e-14));

  const KernelSpec small(GraphParams::critical_at(9));
  Eigen::MatrixXd P(81, 81);
  for (int id = 0; id < 81; ++id) {
    P.row(id) = kernel_row(small, {id / 9, id % 9});
  }
  const Eigen::MatrixXd P2 = P * P;
  CHECK(return_probability(small) == doctest::Approx(P2(0, 0)).epsilon(1e-12));
}

TEST_CASE("two-step dominance: exhaustive N=9 and sampled N=15") {
  Rng rng(5);
  const auto exhaustive =
      two_step_dominance_check(KernelSpec(GraphParams::critical_at(9)), 8, 0, rng);
  CHECK(exhaustive.all_pass());
  CHECK(exhaustive.checked == 7LL * 81 * 81);

  const auto sampled = two_step_dominance_check(
      KernelSpec(GraphParams::critical_at(15)), 8, 100, rng);
  CHECK(sampled.all_pass());
}

TEST_CASE("two-step kernel mass bound 5 c^2 log N / N^2") {
  for (int N : {50, 128}) {
    const GraphParams params = GraphParams::critical_at(N);
    Rng rng(19);
    const double cap = 5.0 * params.c * params.c * std::log(double(N)) /
                       (double(N) * N);
    for (int trial = 0; trial < 50; ++trial) {
      const TorusPoint u{static_cast<std::int32_t>(rng.below(N)),
                         static_cast<std::int32_t>(rng.below(N))};
      const TorusPoint v{static_cast<std::int32_t>(rng.below(N)),
                         static_cast<std::int32_t>(rng.below(N))};
      long double sum = 0.0L;
      for (int x = 0; x < N; ++x) {
        for (int y = 0; y < N; ++y) {
          const TorusPoint w{x, y};
          if (w == u || w == v) continue;
          sum += edge_probability(N, torus_distance(u, w, N), params.c, 1.0) *
                 edge_probability(N, torus_distance(w, v, N), params.c, 1.0);
        }
      }
      CHECK(static_cast<double>(sum) < cap);
    }
  }
}

TEST_CASE("restricted kernel inflation grows with nested forbidden sets") {
  const GraphParams params = GraphParams::critical_at(12);
  Rng rng(23);
  std::vector<std::uint32_t> pool;
  std::set<std::uint32_t> seen;
  while (pool.size() < 60) {
    const auto v = rng.below(144);
    if (v == 0 || !seen.insert(v).second) continue;
    pool.push_back(v);
  }
  const auto base = kernel_row(KernelSpec(params), {0, 0});
  double prev_ratio = 1.0;
  for (std::size_t size : {5u, 20u, 60u}) {
    const KernelSpec spec(params,
                          {pool.begin(), pool.begin() + size});
    const auto row = kernel_row(spec, {0, 0});
    double ratio = 0.0;
    for (int v = 1; v < 144; ++v) {
      if (row[v] == 0.0) continue;
      CHECK(row[v] >= base[v] - 1e-16);  // P <= P_A entrywise
      ratio = std::max(ratio, row[v] / base[v]);
    }
    CHECK(ratio >= prev_ratio - 1e-12);  // nested sets inflate monotonically
    prev_ratio = ratio;
  }
}

TEST_CASE("restricted walk: no repeats and exact one-step law") {
  const GraphParams params = GraphParams::critical_at(9);
  const KernelSpec spec(params);

  // Trajectories never revisit a vertex.
  for (int trial = 0; trial < 200; ++trial) {
    Rng rng = derive_stream(29, trial, StreamTag::kMixing);
    const auto traj = restricted_walk_sample(spec, 30, {4, 4}, nullptr, rng);
    CHECK(traj.size() == 31);
    std::set<std::uint32_t> dedup(traj.begin(), traj.end());
    CHECK(dedup.size() == traj.size());
  }

  // One step avoiding only the start reproduces the kernel row.
  const auto row = kernel_row(spec, {4, 4});
  Eigen::VectorXd hist = Eigen::VectorXd::Zero(81);
  const int M = 20000;
  for (int s = 0; s < M; ++s) {
    Rng rng = derive_stream(31, s, StreamTag::kMixing);
    const auto traj = restricted_walk_sample(spec, 1, {4, 4}, nullptr, rng);
    hist[traj[1]] += 1.0;
  }
  hist /= double(M);
  CHECK(0.5 * (hist - row).cwiseAbs().sum() <= 0.03);
}

TEST_CASE("restricted walk: an all-forbidden row is an error") {
  const GraphParams params = GraphParams::critical_at(3);
  std::vector<std::uint32_t> all_but_start;
  for (std::uint32_t v = 1; v < 9; ++v) all_but_start.push_back(v);
  const KernelSpec spec(params, all_but_start);
  Rng rng(1);
  CHECK_THROWS_AS(restricted_walk_sample(spec, 1, {0, 0}, nullptr, rng),
                  std::runtime_error);
}

TEST_CASE("restricted walk endpoint law is near uniform after ~12 log N steps") {
  const GraphParams params = GraphParams::critical_at(31);
  const KernelSpec spec(params);
  const KernelSampler sampler(params);
  const auto L = static_cast<std::int64_t>(std::ceil(12.0 * std::log(31.0)));
  const int M = 1000000;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(params.n()), 0);
  for (int s = 0; s < M; ++s) {
    Rng rng = derive_stream(37, s, StreamTag::kMixing);
    const TorusPoint start{static_cast<std::int32_t>(s % 31),
                           static_cast<std::int32_t>((s / 31) % 31)};
    const auto traj =
        restricted_walk_sample(spec, sampler, L, start, nullptr, rng);
    ++counts[traj.back()];
  }
  double tv = 0.0;
  const double uniform = double(M) / double(params.n());
  for (auto c : counts) tv += std::abs(double(c) - uniform);
  tv = 0.5 * tv / double(M);
  CHECK(tv <= 0.05);
}

TEST_CASE("restricted walk honors a growing forbidden set") {
  const GraphParams params = GraphParams::critical_at(9);
  const KernelSpec spec(params);
  // Forbid the whole second row from step 2 on.
  ForbiddenGrowth growth = [](std::int64_t step,
                              std::vector<std::uint32_t>& out) {
    if (step == 2) {
      for (std::uint32_t y = 0; y < 9; ++y) out.push_back(9 + y);
    }
  };
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng = derive_stream(41, trial, StreamTag::kMixing);
    const auto traj = restricted_walk_sample(spec, 10, {0, 0}, growth, rng);
    for (std::size_t i = 2; i < traj.size(); ++i) {
      CHECK((traj[i] < 9 || traj[i] >= 18));
    }
  }
}
