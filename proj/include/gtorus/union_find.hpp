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

#ifndef GTORUS_UNION_FIND_HPP_
#define GTORUS_UNION_FIND_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace gtorus {

/// Disjoint sets with union by size and path compression. Used as the
/// brute-force component oracle against exploration traces.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::uint32_t find(std::uint32_t x) {
    std::uint32_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const std::uint32_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  void join(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  /// Component sizes, descending.
  std::vector<std::int64_t> component_sizes() {
    std::vector<std::int64_t> sizes;
    for (std::uint32_t v = 0; v < parent_.size(); ++v) {
      if (find(v) == v) sizes.push_back(size_[v]);
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return sizes;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::int64_t> size_;
};

}  // namespace gtorus

#endif  // GTORUS_UNION_FIND_HPP_
