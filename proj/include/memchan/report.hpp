// Copyright 2026 The memchan Authors
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

#ifndef MEMCHAN_REPORT_HPP
#define MEMCHAN_REPORT_HPP

#include <string>
#include <vector>

#include "memchan/config.hpp"

namespace memchan::cli {

/// Numeric table plus a trailing free-text status column.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> status;

  std::size_t column(const std::string& name) const;
  std::vector<double> values(const std::string& name) const;
  void add(std::vector<double> row, std::string row_status = "ok");
};

/// Header row, then one line per row; numbers use %.17g so that reading the
/// file back restores them bit for bit.
std::string to_csv(const Table& table);
Table parse_csv(const std::string& text);
void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RunResult {
  Table table;
  std::vector<Check> checks;
  std::string summary;

  bool all_passed() const;
};

/// Runs the configured experiment and assembles its table, internal checks
/// and the human-readable summary. Nothing is written to disk.
RunResult run_experiment(const ExperimentConfig& config);

/// run_experiment, then writes <out_dir>/<output>.csv and
/// <out_dir>/<output>.summary.txt. Returns the result for inspection.
RunResult run_and_write(const ExperimentConfig& config, const std::string& out_dir);

}  // namespace memchan::cli

#endif  // MEMCHAN_REPORT_HPP
