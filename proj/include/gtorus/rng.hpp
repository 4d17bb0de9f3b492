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

#ifndef GTORUS_RNG_HPP_
#define GTORUS_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace gtorus {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic counter-derived random stream (xoshiro256** core).
///
/// Streams are addressed by (master seed, run index, purpose tag) so that
/// campaigns split across any number of worker threads consume exactly the
/// same randomness per run, which is what makes re-runs byte-identical.
class Rng {
 public:
  Rng() : Rng(0) {}

  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  static Rng stream(std::uint64_t master, std::uint64_t run,
                    std::uint64_t purpose) {
    std::uint64_t sm = master;
    sm = splitmix64(sm) ^ (run * 0x9e3779b97f4a7c15ULL);
    sm = splitmix64(sm) ^ (purpose * 0xd1342543de82ef95ULL);
    Rng rng;
    for (auto& word : rng.state_) word = splitmix64(sm);
    return rng;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  std::uint32_t next_u32() { return static_cast<std::uint32_t>(next_u64() >> 32); }

  /// Uniform double in [0, 1) with 53 random bits.
  double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Unbiased uniform integer in [0, n) (Lemire rejection).
  std::uint32_t below(std::uint32_t n) {
    std::uint64_t m = static_cast<std::uint64_t>(next_u32()) * n;
    auto lo = static_cast<std::uint32_t>(m);
    if (lo < n) {
      const std::uint32_t threshold = (0u - n) % n;
      while (lo < threshold) {
        m = static_cast<std::uint64_t>(next_u32()) * n;
        lo = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  /// Standard normal via the polar method; one spare value is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * u01() - 1.0;
      v = 2.0 * u01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4] = {};
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Purpose tags for stream derivation; values are part of the
/// reproducibility contract and must not be renumbered.
enum class StreamTag : std::uint64_t {
  kExplore = 1,
  kLimit = 2,
  kUniformPair = 3,
  kBranching = 4,
  kMixing = 5,
  kMaterialize = 6,
  kScratch = 7,
  kBootstrap = 8,
};

inline Rng derive_stream(std::uint64_t master, std::uint64_t run, StreamTag tag) {
  return Rng::stream(master, run, static_cast<std::uint64_t>(tag));
}

/// Binomial draw by sequential CDF inversion. Requires p in (0,1);
/// s0 = (1-p)^n and pq = p/(1-p) are precomputed by hot callers.
inline std::int64_t binomial_precomp(Rng& rng, std::int64_t n, double s0,
                                     double pq) {
  const double u = rng.u01();
  if (u < s0) return 0;
  double pmf = s0;
  double cdf = s0;
  std::int64_t k = 0;
  while (k < n) {
    pmf *= pq * static_cast<double>(n - k) / static_cast<double>(k + 1);
    ++k;
    cdf += pmf;
    if (u < cdf) return k;
  }
  return n;
}

namespace detail {

/// Transformed-rejection binomial sampler for np >= 10, p <= 0.5; the
/// acceptance test is the exact log-pmf ratio, so draws follow Bin(n, p)
/// to floating precision with O(1) expected cost.
inline std::int64_t binomial_btrs(Rng& rng, std::int64_t n, double p) {
  const double np = static_cast<double>(n) * p;
  const double q = 1.0 - p;
  const double spq = std::sqrt(np * q);
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = np + 0.5;
  const double v_r = 0.92 - 4.2 / b;
  const double urvr = 0.86 * v_r;
  const double alpha = (2.83 + 5.1 / b) * spq;
  const double lpq = std::log(p / q);
  const auto m = static_cast<std::int64_t>((static_cast<double>(n) + 1.0) * p);
  const double h = std::lgamma(static_cast<double>(m) + 1.0) +
                   std::lgamma(static_cast<double>(n - m) + 1.0);
  for (;;) {
    double v = rng.u01();
    double u;
    if (v <= urvr) {
      u = v / v_r - 0.43;
      return static_cast<std::int64_t>(
          std::floor((2.0 * a / (0.5 - std::abs(u)) + b) * u + c));
    }
    if (v >= v_r) {
      u = rng.u01() - 0.5;
    } else {
      u = v / v_r - 0.93;
      u = (u < 0.0 ? -0.5 : 0.5) - u;
      v = rng.u01() * v_r;
    }
    const double us = 0.5 - std::abs(u);
    const auto k =
        static_cast<std::int64_t>(std::floor((2.0 * a / us + b) * u + c));
    if (k < 0 || k > n) continue;
    v = v * alpha / (a / (us * us) + b);
    if (std::log(v) <= h - std::lgamma(static_cast<double>(k) + 1.0) -
                           std::lgamma(static_cast<double>(n - k) + 1.0) +
                           static_cast<double>(k - m) * lpq) {
      return k;
    }
  }
}

}  // namespace detail

/// Exact Bin(n, p) sampler: CDF inversion for small means, transformed
/// rejection beyond; never a normal approximation.
inline std::int64_t binomial(Rng& rng, std::int64_t n, double p) {
  if (n < 0) throw std::invalid_argument("binomial: negative trial count");
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  const bool flip = p > 0.5;
  const double pp = flip ? 1.0 - p : p;
  std::int64_t k;
  if (static_cast<double>(n) * pp <= 30.0) {
    // (1-pp)^n >= exp(-1.39 * 30) here, so the inversion start is exact.
    const double s0 = std::exp(static_cast<double>(
        std::log1p(static_cast<long double>(-pp)) *
        static_cast<long double>(n)));
    k = binomial_precomp(rng, n, s0, pp / (1.0 - pp));
  } else {
    k = detail::binomial_btrs(rng, n, pp);
  }
  return flip ? n - k : k;
}

/// Walker alias table for O(1) draws from a fixed discrete distribution.
class AliasTable {
 public:
  AliasTable() = default;

  explicit AliasTable(std::span<const double> weights) {
    const std::size_t n = weights.size();
    if (n == 0) throw std::invalid_argument("AliasTable: empty weights");
    long double total = 0.0L;
    for (double w : weights) {
      if (w < 0.0) throw std::invalid_argument("AliasTable: negative weight");
      total += w;
    }
    if (total <= 0.0L) throw std::invalid_argument("AliasTable: zero mass");
    prob_.resize(n);
    alias_.resize(n);
    std::vector<double> scaled(n);
    std::vector<std::uint32_t> small, large;
    small.reserve(n);
    large.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      scaled[i] = static_cast<double>(weights[i] / total * n);
      (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
      const std::uint32_t s = small.back();
      const std::uint32_t l = large.back();
      small.pop_back();
      large.pop_back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] = (scaled[l] + scaled[s]) - 1.0;
      (scaled[l] < 1.0 ? small : large).push_back(l);
    }
    for (std::uint32_t i : large) prob_[i] = 1.0;
    for (std::uint32_t i : small) prob_[i] = 1.0;
  }

  std::uint32_t sample(Rng& rng) const {
    const auto i = rng.below(static_cast<std::uint32_t>(prob_.size()));
    return rng.u01() < prob_[i] ? i : alias_[i];
  }

  std::size_t size() const { return prob_.size(); }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace gtorus

#endif  // GTORUS_RNG_HPP_
