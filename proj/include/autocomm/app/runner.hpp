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

// Single-run dispatch and persistence. A run writes its expanded config, its
// metric files and a manifest (RunRecord). Metric files depend only on the
// config, so re-running the persisted config reproduces them byte for byte;
// timing and version live in the manifest only.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "autocomm/core/config.hpp"
#include "autocomm/core/error.hpp"

namespace autocomm::app {

/// Failure of a run, prefixed with the track, seed and config digest.
class RunError : public Error {
 public:
  using Error::Error;
};

/// Version string baked in at configure time (git describe when available).
std::string artifact_version();

struct RunRecord {
  std::string track;
  std::uint64_t seed = 0;
  std::string config_digest;
  std::string version;
  /// Ordered metric name -> value.
  std::vector<std::pair<std::string, double>> metrics;
  double wall_time_s = 0.0;
  std::string config_path;
  std::vector<std::string> outputs;  // metric files
  bool ok = true;
  std::string error;

  const double* metric(const std::string& name) const;

  nlohmann::json to_json() const;
  static RunRecord from_json(const nlohmann::json& j);
};

struct RunOptions {
  std::filesystem::path out_dir = "out";
  std::string stem = "run";
};

/// File names a run writes inside out_dir.
struct RunPaths {
  std::filesystem::path config, record, schedule, transcript, traffic, channel;
  static RunPaths of(const RunOptions& opt);
};

/// Dispatches to the track and persists every output. Throws RunError.
RunRecord run(const ScenarioConfig& cfg, const RunOptions& opt = {});

/// Re-runs the config persisted at `config_path` into `opt`.
RunRecord rerun(const std::filesystem::path& config_path, const RunOptions& opt);

/// Reads a whole file; throws Error if it cannot be opened.
std::string read_file(const std::filesystem::path& p);
/// Writes `bytes` verbatim, creating parent directories.
void write_file(const std::filesystem::path& p, const std::string& bytes);

}  // namespace autocomm::app
