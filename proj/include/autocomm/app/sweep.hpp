// Copyright 2026 The Autocomm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "autocomm/app/runner.hpp"

namespace autocomm::app {

/// One swept parameter. `path` is a dotted path into the scenario document
/// ("traffic.num_vehicles"). The value of "channel.buildings" may be an
/// integer n, which selects the n-building fixture layout.
struct SweepAxis {
  std::string path;
  std::vector<nlohmann::json> values;
};

struct SweepSpec {
  nlohmann::json base;           // scenario document
  std::vector<SweepAxis> axes;   // cross product; may be empty (one cell)
  std::vector<std::uint64_t> seeds;
  std::optional<TaskSwitch> task_switch;  // scheduling only
  int workers = 0;               // 0: OpenMP default

  /// {"base", "axis" | "axes", "seeds", "switch": {"at_step", "objective2"}, "workers"}.
  static SweepSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct SweepCell {
  std::vector<nlohmann::json> values;  // one per axis
  std::vector<RunRecord> runs;         // one per seed, seed order
  std::vector<std::string> errors;     // "seed N: message"

  int failures() const { return static_cast<int>(errors.size()); }
};

struct SweepSummary {
  std::vector<std::string> axis_paths;
  std::vector<SweepCell> cells;
  std::vector<std::string> metric_names;  // union over runs, first-seen order

  bool all_ok() const;
  /// cell, one column per axis, runs, failed, then mean/min/max per metric.
  std::string to_csv() const;
};

/// Expands the cells (first axis outermost). Each scenario is validated here,
/// so a bad axis value fails before anything runs.
std::vector<ScenarioConfig> expand_cell(const SweepSpec& spec, const std::vector<nlohmann::json>& values);

/// Runs axis cross product x seeds, concurrently, into out_dir/cell_K/seed_S.
/// Run failures are recorded per cell and the sweep continues. Writes
/// summary.csv, records.jsonl and spec.json into out_dir.
SweepSummary sweep(const SweepSpec& spec, const std::filesystem::path& out_dir);

/// Pure aggregation of already-finished runs.
SweepSummary summarize(std::vector<std::string> axis_paths, std::vector<SweepCell> cells);

}  // namespace autocomm::app
