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

#include "autocomm/app/sweep.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include <omp.h>

#include "autocomm/channel/dataset.hpp"
#include "autocomm/core/digest.hpp"

namespace autocomm::app {

using json = nlohmann::json;

SweepSpec SweepSpec::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("", "sweep spec must be an object");
  SweepSpec s;
  if (!j.contains("base")) throw ConfigError("base", "required");
  s.base = j.at("base");
  auto read_axis = [](const json& a, const std::string& where) {
    if (!a.is_object() || !a.contains("path") || !a.contains("values") || !a["values"].is_array()) {
      throw ConfigError(where, "expected {\"path\": ..., \"values\": [...]}");
    }
    SweepAxis axis{a["path"].get<std::string>(), {}};
    for (const auto& v : a["values"]) axis.values.push_back(v);
    if (axis.values.empty()) throw ConfigError(where + ".values", "must not be empty");
    return axis;
  };
  if (j.contains("axis")) s.axes.push_back(read_axis(j["axis"], "axis"));
  if (j.contains("axes")) {
    for (std::size_t i = 0; i < j["axes"].size(); ++i) {
      s.axes.push_back(read_axis(j["axes"][i], "axes[" + std::to_string(i) + "]"));
    }
  }
  if (!j.contains("seeds") || !j["seeds"].is_array() || j["seeds"].empty()) {
    throw ConfigError("seeds", "must be a non-empty array");
  }
  for (const auto& v : j["seeds"]) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      throw ConfigError("seeds", "entries must be non-negative integers");
    }
    s.seeds.push_back(v.get<std::uint64_t>());
  }
  if (j.contains("switch") && !j["switch"].is_null()) {
    const auto& sw = j["switch"];
    TaskSwitch ts;
    ts.at_iteration = sw.value("at_step", ts.at_iteration);
    if (!sw.contains("objective2")) throw ConfigError("switch.objective2", "required");
    ts.objective2 = objective_from_json(sw["objective2"], 0.0, "switch.objective2");
    s.task_switch = ts;
  }
  s.workers = j.value("workers", 0);
  return s;
}

json SweepSpec::to_json() const {
  json axes_j = json::array();
  for (const auto& a : axes) axes_j.push_back({{"path", a.path}, {"values", a.values}});
  json j = {{"base", base}, {"axes", axes_j}, {"seeds", seeds}, {"workers", workers}};
  if (task_switch) {
    j["switch"] = {{"at_step", task_switch->at_iteration},
                   {"objective2", autocomm::to_json(task_switch->objective2)}};
  }
  return j;
}

namespace {

void set_path(json& doc, const std::string& path, const json& value) {
  if (path == "channel.buildings" && value.is_number_integer()) {
    const auto fixture = channel::fixture_scene(value.get<int>());
    json b = json::array();
    for (const auto& x : fixture.buildings) {
      b.push_back({{"x_min", x.x_min}, {"x_max", x.x_max}, {"y_min", x.y_min}, {"y_max", x.y_max},
                   {"height", x.height}});
    }
    doc["channel"]["buildings"] = b;
    doc["channel"]["bs_pos"] = {fixture.bs_pos.x, fixture.bs_pos.y, fixture.bs_pos.z};
    return;
  }
  json* node = &doc;
  std::stringstream ss(path);
  std::string key;
  std::vector<std::string> keys;
  while (std::getline(ss, key, '.')) keys.push_back(key);
  if (keys.empty()) throw ConfigError(path, "empty sweep path");
  for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
    if (!node->is_object()) throw ConfigError(path, "sweep path crosses a non-object");
    node = &(*node)[keys[i]];
  }
  (*node)[keys.back()] = value;
}

std::string value_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::vector<ScenarioConfig> expand_cell(const SweepSpec& spec, const std::vector<json>& values) {
  json doc = spec.base;
  for (std::size_t a = 0; a < spec.axes.size(); ++a) set_path(doc, spec.axes[a].path, values[a]);
  if (spec.task_switch) {
    doc["scheduling"]["task_switch"] = {
        {"at_iteration", spec.task_switch->at_iteration},
        {"objective2", autocomm::to_json(spec.task_switch->objective2)}};
  }
  std::vector<ScenarioConfig> out;
  for (const auto seed : spec.seeds) {
    doc["seed"] = seed;
    out.push_back(build_scenario(doc));
  }
  return out;
}

bool SweepSummary::all_ok() const {
  return std::all_of(cells.begin(), cells.end(), [](const SweepCell& c) { return c.errors.empty(); });
}

SweepSummary summarize(std::vector<std::string> axis_paths, std::vector<SweepCell> cells) {
  SweepSummary s;
  s.axis_paths = std::move(axis_paths);
  s.cells = std::move(cells);
  for (const auto& c : s.cells) {
    for (const auto& r : c.runs) {
      for (const auto& [name, _] : r.metrics) {
        if (std::find(s.metric_names.begin(), s.metric_names.end(), name) == s.metric_names.end()) {
          s.metric_names.push_back(name);
        }
      }
    }
  }
  return s;
}

std::string SweepSummary::to_csv() const {
  std::ostringstream out;
  out << "cell";
  for (const auto& p : axis_paths) out << ',' << csv_field(p);
  out << ",runs,failed";
  for (const auto& m : metric_names) out << ',' << m << "_mean," << m << "_min," << m << "_max";
  out << ",errors\n";
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& cell = cells[c];
    out << c;
    for (const auto& v : cell.values) out << ',' << csv_field(value_text(v));
    out << ',' << cell.runs.size() << ',' << cell.failures();
    for (const auto& m : metric_names) {
      double sum = 0.0;
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      int n = 0;
      for (const auto& r : cell.runs) {
        if (const double* v = r.metric(m)) {
          sum += *v;
          lo = std::min(lo, *v);
          hi = std::max(hi, *v);
          ++n;
        }
      }
      if (n == 0) {
        out << ",,,";
      } else {
        out << ',' << exact_double(sum / n) << ',' << exact_double(lo) << ',' << exact_double(hi);
      }
    }
    std::string joined;
    for (const auto& e : cell.errors) joined += (joined.empty() ? "" : "; ") + e;
    out << ',' << csv_field(joined) << '\n';
  }
  return out.str();
}

SweepSummary sweep(const SweepSpec& spec, const std::filesystem::path& out_dir) {
  if (spec.seeds.empty()) throw ConfigError("seeds", "must not be empty");
  // Cross product, first axis outermost.
  std::vector<std::vector<json>> combos{{}};
  for (const auto& axis : spec.axes) {
    std::vector<std::vector<json>> next;
    for (const auto& prefix : combos) {
      for (const auto& v : axis.values) {
        auto c = prefix;
        c.push_back(v);
        next.push_back(std::move(c));
      }
    }
    combos = std::move(next);
  }

  std::vector<SweepCell> cells(combos.size());
  std::vector<std::vector<ScenarioConfig>> configs(combos.size());
  for (std::size_t c = 0; c < combos.size(); ++c) {
    cells[c].values = combos[c];
    configs[c] = expand_cell(spec, combos[c]);
  }

  struct Job {
    std::size_t cell, seed;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t s = 0; s < spec.seeds.size(); ++s) jobs.push_back({c, s});
  }
  std::vector<std::optional<RunRecord>> records(jobs.size());
  std::vector<std::string> errors(jobs.size());

  const int threads = spec.workers > 0 ? spec.workers : omp_get_max_threads();
  const auto n = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t k = 0; k < n; ++k) {
    const Job& job = jobs[static_cast<std::size_t>(k)];
    RunOptions opt;
    opt.out_dir = out_dir / ("cell_" + std::to_string(job.cell)) /
                  ("seed_" + std::to_string(spec.seeds[job.seed]));
    try {
      records[static_cast<std::size_t>(k)] = run(configs[job.cell][job.seed], opt);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(k)] = e.what();
    }
  }

  std::string records_jsonl;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    auto& cell = cells[jobs[k].cell];
    if (records[k]) {
      records_jsonl += records[k]->to_json().dump() + "\n";
      cell.runs.push_back(std::move(*records[k]));
    } else {
      cell.errors.push_back("seed " + std::to_string(spec.seeds[jobs[k].seed]) + ": " + errors[k]);
    }
  }

  std::vector<std::string> paths;
  for (const auto& a : spec.axes) paths.push_back(a.path);
  auto summary = summarize(std::move(paths), std::move(cells));
  write_file(out_dir / "spec.json", spec.to_json().dump(2) + "\n");
  write_file(out_dir / "records.jsonl", records_jsonl);
  write_file(out_dir / "summary.csv", summary.to_csv());
  return summary;
}

}  // namespace autocomm::app
