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

#include "gtorus/limit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gtorus/parallel.hpp"

namespace gtorus {

namespace {

std::int64_t grid_steps(double T, double dt) {
  if (!(T > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("limit path: T and dt must be positive");
  }
  const auto m = static_cast<std::int64_t>(std::llround(T / dt));
  return std::max<std::int64_t>(m, 1);
}

}  // namespace

LimitPath sample_drifted_bm(double T, double dt, Rng& rng) {
  const std::int64_t m = grid_steps(T, dt);
  LimitPath path;
  path.T = T;
  path.dt = T / static_cast<double>(m);
  path.w.resize(m + 1);
  path.reflected.resize(m + 1);
  const double sqrt_dt = std::sqrt(path.dt);
  double w = 0.0;
  double s = 0.0;
  double run_min = 0.0;
  path.w[0] = 0.0;
  path.reflected[0] = 0.0;
  for (std::int64_t i = 1; i <= m; ++i) {
    const double s_next = static_cast<double>(i) * path.dt;
    w += sqrt_dt * rng.normal() - 0.5 * (s_next * s_next - s * s);
    s = s_next;
    path.w[i] = w;
    run_min = std::min(run_min, w);
    path.reflected[i] = w - run_min;
  }
  return path;
}

ExcursionSample excursion_lengths(const LimitPath& path) {
  ExcursionSample sample;
  const std::int64_t m = path.grid_points() - 1;
  if (m < 0) throw std::invalid_argument("excursion_lengths: empty path");
  double run_min = path.w[0];
  std::int64_t last_record = 0;
  for (std::int64_t i = 1; i <= m; ++i) {
    if (path.w[i] < run_min) {  // strict new minimum; grid ties have law zero
      run_min = path.w[i];
      sample.lengths.push_back(static_cast<double>(i - last_record) * path.dt);
      last_record = i;
    }
  }
  if (last_record < m) {
    sample.truncated_length = static_cast<double>(m - last_record) * path.dt;
    sample.has_truncated = true;
  }
  std::sort(sample.lengths.begin(), sample.lengths.end(), std::greater<>());
  return sample;
}

LimitComponentSample sample_limit_components(double T, double dt,
                                             std::int64_t paths, int top_j,
                                             std::uint64_t seed, int threads) {
  if (paths < 1 || top_j < 1) {
    throw std::invalid_argument("sample_limit_components: need paths, j >= 1");
  }
  const std::int64_t m = grid_steps(T, dt);
  const double step = T / static_cast<double>(m);
  const double sqrt_dt = std::sqrt(step);

  LimitComponentSample out;
  out.lengths = Eigen::MatrixXd::Zero(paths, top_j);
  out.completed = Eigen::MatrixXd::Zero(paths, top_j);
  out.truncated.setZero(paths, top_j);

  struct Workspace {
    std::vector<double> lengths;
  };
  std::vector<Workspace> ws(static_cast<std::size_t>(std::max(threads, 1)));

  run_indexed(paths, threads, [&](int worker, std::int64_t p) {
    Rng rng = derive_stream(seed, static_cast<std::uint64_t>(p),
                            StreamTag::kLimit);
    auto& lengths = ws[static_cast<std::size_t>(worker)].lengths;
    lengths.clear();
    // Stream the path; only record gaps are kept.
    double w = 0.0;
    double s = 0.0;
    double run_min = 0.0;
    std::int64_t last_record = 0;
    for (std::int64_t i = 1; i <= m; ++i) {
      const double s_next = static_cast<double>(i) * step;
      w += sqrt_dt * rng.normal() - 0.5 * (s_next * s_next - s * s);
      s = s_next;
      if (w < run_min) {
        run_min = w;
        lengths.push_back(static_cast<double>(i - last_record) * step);
        last_record = i;
      }
    }
    std::sort(lengths.begin(), lengths.end(), std::greater<>());
    for (int j = 0; j < top_j && j < static_cast<int>(lengths.size()); ++j) {
      out.completed(p, j) = lengths[j];
    }
    const double trunc =
        last_record < m ? static_cast<double>(m - last_record) * step : 0.0;
    if (trunc > 0.0) {
      // Merge the truncated segment into the ranking and flag its slot.
      int rank = 0;
      while (rank < static_cast<int>(lengths.size()) && lengths[rank] > trunc) {
        ++rank;
      }
      for (int j = 0, src = 0; j < top_j; ++j) {
        if (j == rank) {
          out.lengths(p, j) = trunc;
          out.truncated(p, j) = 1;
        } else if (src < static_cast<int>(lengths.size())) {
          out.lengths(p, j) = lengths[src++];
        }
      }
    } else {
      for (int j = 0; j < top_j && j < static_cast<int>(lengths.size()); ++j) {
        out.lengths(p, j) = lengths[j];
      }
    }
  });
  return out;
}

}  // namespace gtorus
