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

#ifndef GTORUS_IO_HPP_
#define GTORUS_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace gtorus {

/// Shortest round-trippable decimal form of a double; the CSV byte format.
std::string format_double(double value);

/// CSV with a fixed header row; all doubles go through format_double so
/// re-runs are byte-identical.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path,
            const std::vector<std::string>& columns);

  void row(const std::vector<std::string>& cells);

  static std::string cell(double v) { return format_double(v); }
  static std::string cell(std::int64_t v) { return std::to_string(v); }
  static std::string cell(int v) { return std::to_string(v); }

 private:
  std::ofstream out_;
  std::size_t columns_;
};

/// One key = value line of a flat config file.
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

/// Parses `key = value` lines; '#' starts a comment, blank lines are
/// skipped. Malformed lines raise an error naming the line number.
std::vector<ConfigEntry> parse_config(const std::filesystem::path& path);

/// Writes via a temporary file and rename, so readers never observe a
/// partial manifest.
void atomic_write(const std::filesystem::path& path, const std::string& text);

}  // namespace gtorus

#endif  // GTORUS_IO_HPP_
