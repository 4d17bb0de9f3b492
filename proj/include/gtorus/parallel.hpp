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

#ifndef GTORUS_PARALLEL_HPP_
#define GTORUS_PARALLEL_HPP_

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace gtorus {

/// Runs fn(worker, index) for every index in [0, total) across `threads`
/// workers. Each task must derive all randomness from its index and write
/// only to its own output slot; results are then independent of the worker
/// count and of scheduling, which is what campaign reproducibility relies on.
inline void run_indexed(std::int64_t total, int threads,
                        const std::function<void(int, std::int64_t)>& fn) {
  if (total <= 0) return;
  if (threads <= 1) {
    for (std::int64_t i = 0; i < total; ++i) fn(0, i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        while (!failed.load(std::memory_order_relaxed)) {
          const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
          if (i >= total) break;
          fn(w, i);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace gtorus

#endif  // GTORUS_PARALLEL_HPP_
