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
#include <vector>

#include "gtorus/rng.hpp"

using namespace gtorus;

namespace {

// Exact Bin(n, p) pmf by the multiplicative recursion in long double.
std::vector<double> exact_binomial_pmf(std::int64_t n, double p) {
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1);
  long double term = std::exp(static_cast<long double>(n) * std::log1p(-(long double)p));
  const long double ratio = static_cast<long double>(p) / (1.0L - p);
  for (std::int64_t k = 0; k <= n; ++k) {
    pmf[k] = static_cast<double>(term);
    term *= ratio * static_cast<long double>(n - k) / static_cast<long double>(k + 1);
  }
  return pmf;
}

double chi2_against_pmf(const std::vector<std::int64_t>& hist,
                        const std::vector<double>& pmf, std::int64_t draws,
                        int* dof) {
  double chi2 = 0.0;
  *dof = 0;
  double tail_obs = 0.0, tail_exp = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const double expected = pmf[k] * static_cast<double>(draws);
    const double observed =
        k < hist.size() ? static_cast<double>(hist[k]) : 0.0;
    if (expected < 10.0) {
      tail_obs += observed;
      tail_exp += expected;
      continue;
    }
    chi2 += (observed - expected) * (observed - expected) / expected;
    ++*dof;
  }
  if (tail_exp >= 10.0) {
    chi2 += (tail_obs - tail_exp) * (tail_obs - tail_exp) / tail_exp;
    ++*dof;
  }
  return chi2;
}

}  // namespace

TEST_CASE("streams: deterministic and distinct per (run, purpose)") {
  Rng a = derive_stream(42, 7, StreamTag::kExplore);
  Rng b = derive_stream(42, 7, StreamTag::kExplore);
  Rng c = derive_stream(42, 8, StreamTag::kExplore);
  Rng d = derive_stream(42, 7, StreamTag::kLimit);
  bool same = true, diff_run = false, diff_tag = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_u64();
    same = same && va == b.next_u64();
    diff_run = diff_run || va != c.next_u64();
    diff_tag = diff_tag || va != d.next_u64();
  }
  CHECK(same);
  CHECK(diff_run);
  CHECK(diff_tag);
}

TEST_CASE("uniform helpers stay inside their ranges") {
  Rng rng(9);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.u01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const auto k = rng.below(7);
    CHECK(k < 7);
  }
}

TEST_CASE("below(n) is unbiased across residue classes") {
  Rng rng(13);
  std::vector<std::int64_t> hist(6, 0);
  const int draws = 600000;
  for (int i = 0; i < draws; ++i) ++hist[rng.below(6)];
  for (auto h : hist) {
    CHECK(std::abs(static_cast<double>(h) - draws / 6.0) <=
          4.0 * std::sqrt(draws / 6.0));
  }
}

TEST_CASE("normal draws match the first two moments") {
  Rng rng(17);
  const int draws = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::abs(sum / draws) <= 4.0 / std::sqrt(double(draws)));
  CHECK(std::abs(sum2 / draws - 1.0) <= 4.0 * std::sqrt(2.0 / draws));
}

TEST_CASE("binomial sampler: exact edge cases") {
  Rng rng(1);
  CHECK(binomial(rng, 0, 0.5) == 0);
  CHECK(binomial(rng, 10, 0.0) == 0);
  CHECK(binomial(rng, 10, 1.0) == 10);
  CHECK_THROWS_AS(binomial(rng, -1, 0.5), std::invalid_argument);
}

TEST_CASE("binomial sampler: chi^2 against the exact pmf in every regime") {
  struct Case {
    std::int64_t n;
    double p;
    std::uint64_t seed;
  };
  // Means 0.8, 20 (inversion), 60, 90 (transformed rejection incl. flip).
  const Case cases[] = {{80, 0.01, 5}, {400, 0.05, 6}, {1000, 0.06, 7},
                        {100, 0.9, 8}};
  for (const auto& c : cases) {
    Rng rng(c.seed);
    const auto pmf = exact_binomial_pmf(c.n, c.p);
    std::vector<std::int64_t> hist(static_cast<std::size_t>(c.n) + 1, 0);
    const std::int64_t draws = 200000;
    for (std::int64_t i = 0; i < draws; ++i) ++hist[binomial(rng, c.n, c.p)];
    int dof = 0;
    const double chi2 = chi2_against_pmf(hist, pmf, draws, &dof);
    // 99.99% chi^2 quantile is ~ dof + 4 sqrt(2 dof) + 15 in this range.
    CHECK(chi2 <= dof + 4.0 * std::sqrt(2.0 * dof) + 15.0);
  }
}

TEST_CASE("alias table reproduces its weights") {
  const std::vector<double> weights{0.1, 0.4, 0.0, 0.5};
  AliasTable alias(weights);
  Rng rng(3);
  std::vector<std::int64_t> hist(4, 0);
  const int draws = 400000;
  for (int i = 0; i < draws; ++i) ++hist[alias.sample(rng)];
  CHECK(hist[2] == 0);
  for (int k : {0, 1, 3}) {
    const double expected = weights[k] * draws;
    CHECK(std::abs(hist[k] - expected) <= 4.0 * std::sqrt(expected));
  }
  CHECK_THROWS_AS(AliasTable(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(AliasTable(std::vector<double>{0.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(AliasTable(std::vector<double>{1.0, -0.5}),
                  std::invalid_argument);
}
