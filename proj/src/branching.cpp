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

#include "gtorus/branching.hpp"

#include <cmath>
#include <stdexcept>

namespace gtorus {

namespace {

constexpr long double kTailCut = 1e-22L;

// pmf of Bin(n, p) truncated where the remaining tail drops below kTailCut.
std::vector<long double> binomial_pmf(std::int64_t n, long double p) {
  std::vector<long double> pmf;
  if (p <= 0.0L || n == 0) {
    pmf.push_back(1.0L);
    return pmf;
  }
  if (p >= 1.0L) {
    pmf.assign(static_cast<std::size_t>(n) + 1, 0.0L);
    pmf.back() = 1.0L;
    return pmf;
  }
  const long double q = 1.0L - p;
  long double term = std::exp(static_cast<long double>(n) * std::log1p(-p));
  long double cum = term;
  pmf.push_back(term);
  for (std::int64_t k = 0; k < n; ++k) {
    term *= p / q * static_cast<long double>(n - k) /
            static_cast<long double>(k + 1);
    cum += term;
    pmf.push_back(term);
    if (1.0L - cum < kTailCut && k >= 1) break;
  }
  return pmf;
}

}  // namespace

OffspringLaw::OffspringLaw(const GraphParams& params) : params_(params) {
  long double mean = 0.0L;
  long double var = 0.0L;
  std::vector<long double> dist{1.0L};
  std::vector<long double> next;
  for (int r = 1; r <= params.N; ++r) {
    const std::int64_t nr = ring_size(params.N, r);
    if (nr == 0) continue;
    const long double p = static_cast<long double>(
        edge_probability(params.N, r, params.c, params.alpha));
    if (p <= 0.0L) continue;
    ring_n_.push_back(nr);
    ring_p_.push_back(static_cast<double>(p));
    mean += p * static_cast<long double>(nr);
    var += p * (1.0L - p) * static_cast<long double>(nr);
    const auto b = binomial_pmf(nr, p);
    if (b.size() == 1) continue;
    next.assign(dist.size() + b.size() - 1, 0.0L);
    for (std::size_t i = 0; i < dist.size(); ++i) {
      if (dist[i] == 0.0L) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        next[i + j] += dist[i] * b[j];
      }
    }
    dist.swap(next);
    // Trim the far tail to keep the support compact.
    long double tail = 0.0L;
    std::size_t cut = dist.size();
    while (cut > 1 && tail + dist[cut - 1] < kTailCut) {
      tail += dist[--cut];
    }
    dist.resize(cut);
  }
  mean_ = static_cast<double>(mean);
  variance_ = static_cast<double>(var);
  long double total = 0.0L;
  for (long double v : dist) total += v;
  pmf_.resize(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) {
    pmf_[i] = static_cast<double>(dist[i] / total);
  }
  alias_ = AliasTable(pmf_);
}

double OffspringLaw::pmf_mean() const {
  long double acc = 0.0L;
  for (std::size_t k = 0; k < pmf_.size(); ++k) {
    acc += static_cast<long double>(k) * pmf_[k];
  }
  return static_cast<double>(acc);
}

double OffspringLaw::pmf_second_moment() const {
  long double acc = 0.0L;
  for (std::size_t k = 0; k < pmf_.size(); ++k) {
    acc += static_cast<long double>(k) * static_cast<long double>(k) * pmf_[k];
  }
  return static_cast<double>(acc);
}

std::int64_t OffspringLaw::sample_direct(Rng& rng) const {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < ring_n_.size(); ++i) {
    total += binomial(rng, ring_n_[i], ring_p_[i]);
  }
  return total;
}

TreeSummary simulate_tree(const OffspringLaw& law, Rng& rng,
                          std::int64_t population_cap) {
  TreeSummary summary;
  std::int64_t current = 1;
  summary.total = 1;
  summary.max_generation = 1;
  std::int64_t generation = 0;
  while (current > 0) {
    std::int64_t next = 0;
    for (std::int64_t i = 0; i < current; ++i) next += law.sample(rng);
    ++generation;
    summary.total += next;
    summary.max_generation = std::max(summary.max_generation, next);
    current = next;
    if (summary.total > population_cap) {
      summary.cap_hit = true;
      break;
    }
  }
  summary.extinction_generation = generation;
  return summary;
}

TailEstimate max_tail_estimate(const OffspringLaw& law, std::int64_t K,
                               std::int64_t samples, Rng& rng) {
  if (K < 1) throw std::invalid_argument("max_tail_estimate: K must be >= 1");
  if (samples < 1) {
    throw std::invalid_argument("max_tail_estimate: need at least one sample");
  }
  std::int64_t exceed = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    std::int64_t current = 1;
    while (current > 0) {
      std::int64_t next = 0;
      for (std::int64_t i = 0; i < current; ++i) next += law.sample(rng);
      if (next > K) {
        ++exceed;
        break;
      }
      current = next;
    }
  }
  TailEstimate est;
  est.exceed_count = exceed;
  est.samples = samples;
  const double phat = static_cast<double>(exceed) / static_cast<double>(samples);
  const double se = std::sqrt(phat * (1.0 - phat) / static_cast<double>(samples));
  est.value = static_cast<double>(K) * phat;
  est.lo = static_cast<double>(K) * std::max(0.0, phat - 2.5758 * se);
  est.hi = static_cast<double>(K) * (phat + 2.5758 * se);
  return est;
}

}  // namespace gtorus
