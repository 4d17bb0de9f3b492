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

#include "gtorus/limit.hpp"
#include "gtorus/stats.hpp"

using namespace gtorus;

TEST_CASE("drifted path: validation, anchor, and reflection identity") {
  Rng rng(1);
  CHECK_THROWS_AS(sample_drifted_bm(0.0, 1e-3, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_drifted_bm(1.0, 0.0, rng), std::invalid_argument);

  const auto path = sample_drifted_bm(2.0, 1e-3, rng);
  CHECK(path.grid_points() == 2001);
  CHECK(path.reflected[0] == 0.0);
  double run_min = 0.0;
  for (std::int64_t i = 0; i < path.grid_points(); ++i) {
    run_min = std::min(run_min, path.w[i]);
    CHECK(path.reflected[i] == path.w[i] - run_min);  // exact on the grid
    CHECK(path.reflected[i] >= 0.0);
  }
}

TEST_CASE("terminal mean and variance match the drifted Brownian law") {
  const double T = 1.0;
  const int M = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int p = 0; p < M; ++p) {
    Rng rng = derive_stream(3, p, StreamTag::kLimit);
    const auto path = sample_drifted_bm(T, 0.01, rng);
    const double w = path.w[path.grid_points() - 1];
    sum += w;
    sum2 += w * w;
  }
  const double mean = sum / M;
  const double var = sum2 / M - mean * mean;
  CHECK(std::abs(mean - (-T * T / 2.0)) <= 3.0 * std::sqrt(T / M));
  CHECK(std::abs(var - T) <= 3.0 * T * std::sqrt(2.0 / M));
}

TEST_CASE("excursions of forced paths") {
  LimitPath path;
  path.T = 1.0;
  path.dt = 0.1;
  path.w.resize(11);
  path.reflected.resize(11);

  // Strictly decreasing: every grid point is a record, all gaps are dt.
  for (int i = 0; i <= 10; ++i) path.w[i] = -0.1 * i;
  auto exc = excursion_lengths(path);
  CHECK(exc.lengths.size() == 10);
  for (double g : exc.lengths) CHECK(g == doctest::Approx(0.1));
  CHECK(!exc.has_truncated);

  // Strictly increasing after 0: a single truncated segment of length T.
  for (int i = 0; i <= 10; ++i) path.w[i] = 0.1 * i;
  exc = excursion_lengths(path);
  CHECK(exc.lengths.empty());
  CHECK(exc.has_truncated);
  CHECK(exc.truncated_length == doctest::Approx(1.0));
}

TEST_CASE("excursion lengths partition the horizon") {
  Rng rng(9);
  const auto path = sample_drifted_bm(3.0, 1e-3, rng);
  const auto exc = excursion_lengths(path);
  double total = exc.truncated_length;
  for (double g : exc.lengths) {
    CHECK(g > 0.0);
    total += g;
  }
  CHECK(total == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(std::is_sorted(exc.lengths.begin(), exc.lengths.end(),
                       std::greater<double>()));
}

TEST_CASE("running minimum of the drifted path sits in the analytic band") {
  // min W~ >= min W - T^2/2 and E min W = -sqrt(2T/pi); E min W~ <= -T^2/2.
  const double T = 2.0;
  const int M = 4000;
  double sum_min = 0.0;
  for (int p = 0; p < M; ++p) {
    Rng rng = derive_stream(11, p, StreamTag::kLimit);
    const auto path = sample_drifted_bm(T, 1e-3, rng);
    sum_min += path.w.minCoeff();
  }
  const double mean_min = sum_min / M;
  const double emaxw = std::sqrt(2.0 * T / M_PI);
  const double se = 3.0 * std::sqrt(T / M);
  CHECK(mean_min >= -T * T / 2.0 - emaxw - 3.0 * se);
  CHECK(mean_min <= -T * T / 2.0 + 3.0 * se);
}

TEST_CASE("top-j excursion samples are ordered and flag truncation") {
  const auto sample = sample_limit_components(5.0, 1e-3, 200, 3, 77, 1);
  for (int i = 0; i < 200; ++i) {
    CHECK(sample.lengths(i, 0) >= sample.lengths(i, 1));
    CHECK(sample.lengths(i, 1) >= sample.lengths(i, 2));
    CHECK(sample.completed(i, 0) >= sample.completed(i, 1));
    int flags = 0;
    for (int j = 0; j < 3; ++j) flags += sample.truncated(i, j);
    CHECK(flags <= 1);
    // Unflagged entries of the merged ranking are completed excursions.
    int src = 0;
    for (int j = 0; j < 3; ++j) {
      if (sample.truncated(i, j)) continue;
      if (sample.lengths(i, j) == 0.0) break;
      CHECK(sample.lengths(i, j) == doctest::Approx(sample.completed(i, src)));
      ++src;
    }
  }
}

TEST_CASE("largest excursion law is seed-stable (self-consistency)") {
  const int M = 10000;
  const auto a = sample_limit_components(10.0, 1e-3, M, 1, 101, 1);
  const auto b = sample_limit_components(10.0, 1e-3, M, 1, 202, 1);
  std::vector<double> ga(M), gb(M);
  for (int i = 0; i < M; ++i) {
    ga[i] = a.completed(i, 0);
    gb[i] = b.completed(i, 0);
  }
  CHECK(ks_two_sample(ga, gb) <= 0.03);
}

TEST_CASE("largest excursion law is stable under grid refinement") {
  const int M = 10000;
  const auto coarse = sample_limit_components(10.0, 2e-3, M, 1, 303, 1);
  const auto fine = sample_limit_components(10.0, 1e-3, M, 1, 404, 1);
  std::vector<double> gc(M), gf(M);
  for (int i = 0; i < M; ++i) {
    gc[i] = coarse.completed(i, 0);
    gf[i] = fine.completed(i, 0);
  }
  CHECK(ks_two_sample(gc, gf) <= 0.02);
}

TEST_CASE("limit component sampling is thread-count independent") {
  const auto one = sample_limit_components(2.0, 1e-3, 64, 2, 55, 1);
  const auto four = sample_limit_components(2.0, 1e-3, 64, 2, 55, 4);
  CHECK((one.lengths - four.lengths).cwiseAbs().maxCoeff() == 0.0);
  CHECK((one.completed - four.completed).cwiseAbs().maxCoeff() == 0.0);
}
