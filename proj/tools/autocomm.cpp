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

// autocomm {schedule|opro|traffic|channel|sweep|report}
//
// Exit codes: 0 success, 1 a run or sweep cell failed, 2 bad arguments or
// configuration.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "autocomm/app/report.hpp"
#include "autocomm/app/runner.hpp"
#include "autocomm/app/sweep.hpp"
#include "autocomm/channel/dataset.hpp"
#include "autocomm/core/digest.hpp"

namespace fs = std::filesystem;
using namespace autocomm;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "Scenario JSON file (defaults apply when omitted)");
  cmd->add_option("--seed", c.seed, "Overrides the config seed");
  cmd->add_option("--out", c.out, "Output directory")->capture_default_str();
}

ScenarioConfig load(const Common& c, Track track) {
  ScenarioConfig cfg;
  if (!c.config.empty()) {
    const std::string text = app::read_file(c.config);
    cfg = build_scenario(std::string_view(text));
    if (cfg.track != track) {
      throw ConfigError("track", "config is for the " + std::string(to_string(cfg.track)) +
                                     " track, expected " + std::string(to_string(track)));
    }
  } else {
    nlohmann::json doc = {{"track", to_string(track)}, {"seed", 0}};
    cfg = build_scenario(doc);
  }
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

// Round trip through the document parser so overrides get the same checks
// as a config file.
ScenarioConfig revalidate(const ScenarioConfig& cfg) { return build_scenario(to_json(cfg)); }

int execute(const ScenarioConfig& cfg, const Common& c) {
  const auto rec = app::run(revalidate(cfg), {.out_dir = c.out, .stem = "run"});
  std::cout << rec.track << " seed=" << rec.seed << " config=" << rec.config_digest.substr(0, 12);
  for (const auto& [k, v] : rec.metrics) std::cout << ' ' << k << '=' << exact_double(v);
  std::cout << "\n";
  for (const auto& o : rec.outputs) std::cout << "  wrote " << o << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Wireless resource scheduling, traffic control and channel prediction experiments"};
  cli.require_subcommand(1);

  Common sched_c;
  std::string method, objective;
  std::optional<double> min_rate;
  std::optional<int> robots;
  auto* schedule = cli.add_subcommand("schedule", "Schedule RBs with rr, ga, oracle or opro");
  add_common(schedule, sched_c);
  schedule->add_option("--method", method, "rr | ga | oracle | opro");
  schedule->add_option("--objective", objective, "pf | qos_sum_rate | qos_pf");
  schedule->add_option("--min-rate", min_rate, "R_min in bit/s");
  schedule->add_option("--robots", robots, "Number of robots");

  Common opro_c;
  std::string engine, opro_objective, objective2;
  std::optional<int> switch_at, max_iter;
  auto* opro = cli.add_subcommand("opro", "Optimization-by-prompting RB scheduling");
  add_common(opro, opro_c);
  opro->add_option("--engine", engine, "mock | chat | record:<cassette> | replay:<cassette>");
  opro->add_option("--objective", opro_objective, "pf | qos_sum_rate | qos_pf");
  opro->add_option("--switch-at", switch_at, "Iteration at which the objective changes");
  opro->add_option("--objective2", objective2, "Objective after the switch");
  opro->add_option("--max-iter", max_iter, "Iteration budget");
  opro->add_option("--robots", robots, "Number of robots");
  opro->add_option("--min-rate", min_rate, "R_min in bit/s");

  Common traffic_c;
  std::string controller, view;
  std::optional<int> vehicles;
  auto* traffic = cli.add_subcommand("traffic", "Signalized intersection episode");
  add_common(traffic, traffic_c);
  traffic->add_option("--controller", controller, "rr | greedy | engine | replay:<cassette>");
  traffic->add_option("--view", view, "vue | rsu");
  traffic->add_option("--vehicles", vehicles, "Number of vehicles");

  Common channel_c;
  std::string scene;
  std::vector<std::string> predictors;
  std::optional<double> training_spacing;
  auto* channel = cli.add_subcommand("channel", "Channel prediction NMSE over a user grid");
  add_common(channel, channel_c);
  channel->add_option("--scene", scene, "Scene JSON file, or fixture:N for the N-building layout");
  channel->add_option("--predictor", predictors, "geom | linear | nn (repeatable)");
  channel->add_option("--training-spacing", training_spacing, "Training grid spacing in meters");

  std::string spec_path, sweep_out = "out";
  int workers = -1;
  auto* sweep = cli.add_subcommand("sweep", "Axis x seeds sweep with a summary CSV");
  sweep->add_option("--config,--spec", spec_path, "Sweep spec JSON")->required();
  sweep->add_option("--out", sweep_out, "Output directory")->capture_default_str();
  sweep->add_option("--workers", workers, "Concurrent runs (0: all cores)");

  std::vector<std::string> inputs;
  std::string report_out;
  auto* report = cli.add_subcommand("report", "Table and CSV from run records");
  report->add_option("inputs", inputs, "Record files or directories")->required();
  report->add_option("--out", report_out, "Directory for report.csv and report.txt");

  CLI11_PARSE(cli, argc, argv);

  try {
    if (*schedule) {
      auto cfg = load(sched_c, Track::Scheduling);
      auto& s = *cfg.scheduling;
      if (!method.empty()) s.method = method;
      if (!objective.empty()) s.objective.kind = parse_objective_kind(objective);
      if (min_rate) s.min_rate_bps = s.objective.min_rate_bps = *min_rate;
      if (robots) s.num_robots = *robots;
      return execute(cfg, sched_c);
    }
    if (*opro) {
      auto cfg = load(opro_c, Track::Scheduling);
      auto& s = *cfg.scheduling;
      s.method = "opro";
      if (!engine.empty()) s.engine = engine;
      if (!opro_objective.empty()) s.objective.kind = parse_objective_kind(opro_objective);
      if (max_iter) s.opro.max_iterations = *max_iter;
      if (robots) s.num_robots = *robots;
      if (min_rate) s.min_rate_bps = s.objective.min_rate_bps = *min_rate;
      if (switch_at || !objective2.empty()) {
        if (!switch_at || objective2.empty()) {
          throw ConfigError("task_switch", "--switch-at and --objective2 go together");
        }
        TaskSwitch ts;
        ts.at_iteration = *switch_at;
        ts.objective2.kind = parse_objective_kind(objective2);
        ts.objective2.min_rate_bps = s.min_rate_bps;
        s.task_switch = ts;
      }
      return execute(cfg, opro_c);
    }
    if (*traffic) {
      auto cfg = load(traffic_c, Track::Traffic);
      auto& t = *cfg.traffic;
      if (!controller.empty()) t.controller = controller;
      if (!view.empty()) t.view = parse_view(view);
      if (vehicles) t.num_vehicles = *vehicles;
      return execute(cfg, traffic_c);
    }
    if (*channel) {
      auto cfg = load(channel_c, Track::Channel);
      if (scene.starts_with("fixture:")) {
        cfg.channel = channel::fixture_scene(std::stoi(scene.substr(8)));
      } else if (!scene.empty()) {
        cfg.channel = channel::load_scene_file(scene);
      }
      if (!predictors.empty()) cfg.channel->predictors = predictors;
      if (training_spacing) cfg.channel->training_spacing_m = *training_spacing;
      return execute(cfg, channel_c);
    }
    if (*sweep) {
      auto spec = app::SweepSpec::from_json(nlohmann::json::parse(app::read_file(spec_path)));
      if (workers >= 0) spec.workers = workers;
      const auto summary = app::sweep(spec, sweep_out);
      std::cout << summary.to_csv();
      for (const auto& cell : summary.cells) {
        for (const auto& e : cell.errors) std::cerr << "failed: " << e << "\n";
      }
      return summary.all_ok() ? 0 : 1;
    }
    if (*report) {
      std::vector<fs::path> paths(inputs.begin(), inputs.end());
      const auto rep = app::make_report(app::load_records(paths));
      std::cout << rep.table;
      if (!report_out.empty()) {
        app::write_file(fs::path(report_out) / "report.csv", rep.csv);
        app::write_file(fs::path(report_out) / "report.txt", rep.table);
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
