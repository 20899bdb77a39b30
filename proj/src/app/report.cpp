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

#include "autocomm/app/report.hpp"

#include <algorithm>
#include <sstream>

#include "autocomm/core/digest.hpp"

namespace autocomm::app {

namespace {

constexpr const char* kTrackOrder[] = {"scheduling", "channel", "traffic"};

int track_rank(const std::string& t) {
  for (int i = 0; i < 3; ++i) {
    if (t == kTrackOrder[i]) return i;
  }
  return 3;
}

void add_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

std::string cell_text(const RunRecord& r, const std::string& metric) {
  const double* v = r.metric(metric);
  return v ? fixed(*v, 4) : "-";
}

}  // namespace

Report make_report(const std::vector<RunRecord>& records) {
  std::vector<const RunRecord*> rows;
  for (const auto& r : records) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(), [](const RunRecord* a, const RunRecord* b) {
    return track_rank(a->track) < track_rank(b->track);
  });

  std::vector<std::string> all_metrics;
  for (const auto* r : rows) {
    for (const auto& [name, _] : r->metrics) add_unique(all_metrics, name);
  }

  Report rep;
  std::ostringstream csv;
  csv << "track,seed,config_digest,ok";
  for (const auto& m : all_metrics) csv << ',' << m;
  csv << '\n';
  for (const auto* r : rows) {
    csv << r->track << ',' << r->seed << ',' << r->config_digest << ',' << (r->ok ? 1 : 0);
    for (const auto& m : all_metrics) {
      csv << ',';
      if (const double* v = r->metric(m)) csv << exact_double(*v);
    }
    csv << '\n';
  }
  rep.csv = csv.str();

  std::ostringstream table;
  for (std::size_t i = 0; i < rows.size();) {
    std::size_t j = i;
    while (j < rows.size() && rows[j]->track == rows[i]->track) ++j;
    std::vector<std::string> metrics;
    for (std::size_t k = i; k < j; ++k) {
      for (const auto& [name, _] : rows[k]->metrics) add_unique(metrics, name);
    }
    std::vector<std::string> header{"seed", "config"};
    header.insert(header.end(), metrics.begin(), metrics.end());
    std::vector<std::vector<std::string>> body;
    for (std::size_t k = i; k < j; ++k) {
      std::vector<std::string> line{std::to_string(rows[k]->seed), rows[k]->config_digest.substr(0, 12)};
      for (const auto& m : metrics) line.push_back(cell_text(*rows[k], m));
      body.push_back(std::move(line));
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
      width[c] = header[c].size();
      for (const auto& line : body) width[c] = std::max(width[c], line[c].size());
    }
    auto emit = [&](const std::vector<std::string>& line) {
      for (std::size_t c = 0; c < line.size(); ++c) {
        if (c) table << "  ";
        table << std::string(width[c] - line[c].size(), ' ') << line[c];
      }
      table << '\n';
    };
    if (i > 0) table << '\n';
    table << "[" << rows[i]->track << "] " << (j - i) << " run(s)\n";
    emit(header);
    for (const auto& line : body) emit(line);
    i = j;
  }
  rep.table = table.str();
  return rep;
}

std::vector<RunRecord> load_records(const std::vector<std::filesystem::path>& inputs) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  // Directories hold one manifest per run; records.jsonl duplicates them,
  // so it is read only when named explicitly.
  auto wanted = [](const fs::path& p) { return p.filename().string().ends_with(".record.json"); };
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      for (const auto& e : fs::recursive_directory_iterator(in)) {
        if (e.is_regular_file() && wanted(e.path())) files.push_back(e.path());
      }
    } else if (fs::exists(in)) {
      files.push_back(in);
    } else {
      throw Error("no such record file or directory: " + in.string());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<RunRecord> out;
  for (const auto& f : files) {
    const auto text = read_file(f);
    try {
      if (f.extension() == ".jsonl") {
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
          if (!line.empty()) out.push_back(RunRecord::from_json(nlohmann::json::parse(line)));
        }
      } else {
        out.push_back(RunRecord::from_json(nlohmann::json::parse(text)));
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(f.string() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace autocomm::app
