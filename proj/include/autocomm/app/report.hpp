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

#include <filesystem>
#include <string>
#include <vector>

#include "autocomm/app/runner.hpp"

namespace autocomm::app {

struct Report {
  std::string table;  // aligned text, one section per track
  std::string csv;    // track,seed,config_digest,ok, then the union of metrics
};

/// Rows are grouped by track (scheduling, channel, traffic); input order is
/// kept inside a group.
Report make_report(const std::vector<RunRecord>& records);

/// Collects records from *.record.json and records.jsonl files, and from
/// directories searched recursively for *.record.json. Sorted by path.
std::vector<RunRecord> load_records(const std::vector<std::filesystem::path>& inputs);

}  // namespace autocomm::app
