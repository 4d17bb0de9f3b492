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

#ifndef GTORUS_LIMIT_HPP_
#define GTORUS_LIMIT_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gtorus/rng.hpp"

namespace gtorus {

/// Grid discretization of W~(s) = W(s) - s^2/2 on [0, T] and its reflection
/// B = W~ - running minimum. The Gaussian increments are exact in law on the
/// grid; the only approximation is the grid resolution of record times.
struct LimitPath {
  double T = 0.0;
  double dt = 0.0;               // effective step T / m
  Eigen::ArrayXd w;              // W~ on the grid, size m + 1
  Eigen::ArrayXd reflected;      // B = W~ - cummin(W~), nonnegative

  std::int64_t grid_points() const { return w.size(); }
};

/// Ordered excursion lengths of B: gaps between consecutive strict running
/// minima of W~, descending. The final open segment T - (last record time)
/// is kept separately with a truncation flag.
struct ExcursionSample {
  std::vector<double> lengths;       // completed excursions, descending
  double truncated_length = 0.0;     // final open segment
  bool has_truncated = false;
};

LimitPath sample_drifted_bm(double T, double dt, Rng& rng);

ExcursionSample excursion_lengths(const LimitPath& path);

/// Top-j ordered excursion lengths over M independent paths.
/// `lengths` ranks the truncated final segment alongside the completed ones
/// (flagged per entry in `truncated`); `completed` ranks completed
/// excursions only, which is what distribution comparisons use by default.
struct LimitComponentSample {
  Eigen::MatrixXd lengths;     // M x j, truncated segment included
  Eigen::MatrixXd completed;   // M x j, completed excursions only
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> truncated;
};

/// M paths with per-path streams derived from (seed, path index), so the
/// result is independent of the worker count.
LimitComponentSample sample_limit_components(double T, double dt,
                                             std::int64_t paths, int top_j,
                                             std::uint64_t seed,
                                             int threads = 1);

}  // namespace gtorus

#endif  // GTORUS_LIMIT_HPP_
