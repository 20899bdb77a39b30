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

// Acceptance suite. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria (0 = all pass).
//
//   acceptance            run criteria 1-8
//   acceptance 3 6        run only the listed criteria

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "autocomm/app/runner.hpp"
#include "autocomm/channel/dataset.hpp"
#include "autocomm/channel/geometry.hpp"
#include "autocomm/channel/oracle.hpp"
#include "autocomm/channel/paths.hpp"
#include "autocomm/core/rng.hpp"
#include "autocomm/llm/chat_client.hpp"
#include "autocomm/opro/loop.hpp"
#include "autocomm/opro/mock_engine.hpp"
#include "autocomm/radio/link.hpp"
#include "autocomm/sched/allocation.hpp"
#include "autocomm/sched/baselines.hpp"
#include "autocomm/traffic/controllers.hpp"
#include "support/instances.hpp"

namespace {

using namespace autocomm;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// ------------------------------------------------------------- tolerances
constexpr int kSchedInstances = 100;
constexpr double kGaRatio = 0.99;
constexpr double kGaBudgetS = 300.0;

constexpr double kOproRatio = 0.98;
constexpr int kOproIterations = 200;
constexpr int kOproRequired = 95;

constexpr int kSwitchSeeds = 20;
constexpr int kSwitchRobots = 4;
constexpr int kSwitchAt = 100;
constexpr double kSwitchMinRateBps = 1.0e7;
constexpr double kSwitchRelTol = 0.05;

constexpr int kClampCases = 1000;

constexpr int kScenes = 1000;
constexpr double kOracleResolutionM = 0.01;
constexpr double kPositionTolM = 0.02;
constexpr double kResidualTolRad = 1e-9;
constexpr double kGeometryBudgetS = 60.0;

constexpr double kFloorDb = -150.0;
constexpr double kDenseTrainingSpacingM = 0.02;
constexpr double kMaxShiftM = 2.0;
constexpr double kShiftStepM = 0.1;

constexpr int kTrafficVehicles = 80;
constexpr int kTrafficSeeds = 50;
constexpr int kGreedyRequired = 45;  // 90 %
constexpr int kViewRequired = 40;    // 80 %

constexpr double kSuiteBudgetS = 600.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("autocomm_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// 1 ---------------------------------------------------------------------
Outcome scheduling_oracle_equivalence() {
  const auto t0 = Clock::now();
  int good = 0;
  double worst = 1.0;
  for (int i = 0; i < kSchedInstances; ++i) {
    const auto in = testing::brute_forceable_instance(i);
    const auto opt = sched::brute_force_optimal(in.cfg, in.snr, in.objective);
    auto rng = stream(static_cast<std::uint64_t>(i), "ga");
    const auto ga = sched::ga_schedule(in.cfg, in.snr, in.objective, in.cfg.ga, rng);
    const double ratio = ga.score / opt.score;
    worst = std::min(worst, ratio);
    if (ga.fitness.feasible() && ratio >= kGaRatio) ++good;
  }
  const double t = seconds_since(t0);
  return {good == kSchedInstances && t < kGaBudgetS,
          fmt("%d/%d instances at >= %.2f x optimum, worst ratio %.6f, %.1f s", good,
              kSchedInstances, kGaRatio, worst, t)};
}

// 2 ---------------------------------------------------------------------
Outcome opro_loop_soundness() {
  int good = 0;
  int false_success = 0;
  int non_monotone = 0;
  OproParams params;
  params.max_iterations = kOproIterations;
  for (int i = 0; i < kSchedInstances; ++i) {
    const auto in = testing::brute_forceable_instance(i);
    const auto opt = sched::brute_force_optimal(in.cfg, in.snr, in.objective);
    auto engine = opro::mock_local_search_engine();
    auto rng = stream(static_cast<std::uint64_t>(i), "opro");
    opro::OproTranscript tr;
    const auto r = opro::opro_optimize(*engine, in.cfg, in.snr, in.objective, params, rng, tr);
    if (r.success && r.score >= kOproRatio * opt.score && r.iterations <= kOproIterations) ++good;
    if (r.success && (!r.report.ok || r.report.qos_violation_count() > 0)) ++false_success;
    for (std::size_t k = 1; k < tr.entries.size(); ++k) {
      if (tr.entries[k - 1].best_fitness.better_than(tr.entries[k].best_fitness)) {
        ++non_monotone;
        break;
      }
    }
  }
  return {good >= kOproRequired && false_success == 0 && non_monotone == 0,
          fmt("%d/%d reach %.2f x oracle (need %d), %d false successes, %d non-monotone transcripts",
              good, kSchedInstances, kOproRatio, kOproRequired, false_success, non_monotone)};
}

// 3 ---------------------------------------------------------------------
Outcome task_switch() {
  const auto dir = scratch_dir("switch");
  int within = 0;
  int valid = 0;
  double worst = 0.0;
  for (int seed = 0; seed < kSwitchSeeds; ++seed) {
    ScenarioConfig sc;
    sc.track = Track::Scheduling;
    sc.seed = static_cast<std::uint64_t>(seed);
    SchedulingConfig s;
    s.num_robots = kSwitchRobots;
    s.buffer_occupancy_prob = 1.0;
    s.method = "opro";
    s.engine = "mock";
    s.opro.max_iterations = 2 * kSwitchAt;
    TaskSwitch ts;
    ts.at_iteration = kSwitchAt;
    ts.objective2.kind = ObjectiveKind::QosSumRate;
    ts.objective2.min_rate_bps = kSwitchMinRateBps;
    s.task_switch = ts;
    sc.scheduling = s;
    const auto stem = "s" + std::to_string(seed);
    const auto rec = app::run(sc, {dir, stem});

    // Fresh GA on the second objective, same seed and so the same SNR map.
    ScenarioConfig gc = sc;
    gc.scheduling->method = "ga";
    gc.scheduling->task_switch.reset();
    gc.scheduling->objective = ts.objective2;
    gc.scheduling->min_rate_bps = kSwitchMinRateBps;
    const auto ga = app::run(gc, {dir, stem + "_ga"});

    const double* after = rec.metric("score_after");
    const double* ref = ga.metric("score");
    if (after && ref) {
      const double rel = std::abs(*after - *ref) / *ref;
      worst = std::max(worst, rel);
      if (rel <= kSwitchRelTol) ++within;
    }

    // One transcript, two segments, contiguous iterations, both feasible.
    std::ifstream in(app::RunPaths::of({dir, stem}).transcript);
    std::string line;
    int expected_iter = -1;
    bool contiguous = true;
    std::array<int, 2> entries{0, 0};
    std::array<std::string, 2> objective;
    int last_segment = 0;
    while (std::getline(in, line)) {
      const auto j = nlohmann::json::parse(line);
      const int it = j.at("iteration").get<int>();
      const int seg = j.at("segment").get<int>();
      if (expected_iter >= 0 && it != expected_iter) contiguous = false;
      if (seg < last_segment || seg > 1) contiguous = false;
      expected_iter = it + 1;
      last_segment = seg;
      if (seg >= 0 && seg <= 1) {
        ++entries[static_cast<std::size_t>(seg)];
        objective[static_cast<std::size_t>(seg)] = j.at("objective").get<std::string>();
      }
    }
    const double* f0 = rec.metric("feasible_before");
    const double* f1 = rec.metric("feasible_after");
    if (contiguous && entries[0] > 0 && entries[1] > 0 && objective[0] == "pf" &&
        objective[1] == "qos_sum_rate" && f0 && f1 && *f0 == 1.0 && *f1 == 1.0) {
      ++valid;
    }
  }
  return {within == kSwitchSeeds && valid == kSwitchSeeds,
          fmt("%d/%d post-switch scores within %.0f%% of fresh GA (worst %.2f%%), %d/%d transcripts "
              "with two valid segments",
              within, kSwitchSeeds, 100 * kSwitchRelTol, 100 * worst, valid, kSwitchSeeds)};
}

// 4 ---------------------------------------------------------------------
Outcome zero_rate_clamping() {
  auto rng = stream(4, "clamp");
  int equal = 0;
  int clamped_entries = 0;
  for (int c = 0; c < kClampCases; ++c) {
    SchedulingConfig cfg;
    cfg.num_robots = 1 + static_cast<int>(rng.below(10));
    cfg.num_rbs = 1 + static_cast<int>(rng.below(12));
    radio::SnrMap snr(cfg.num_robots, cfg.num_rbs);
    for (int r = 0; r < cfg.num_robots; ++r) {
      for (int b = 0; b < cfg.num_rbs; ++b) snr.at(r, b) = std::pow(10.0, rng.uniform(-2.0, 4.0));
    }
    sched::Allocation a;
    for (int b = 0; b < cfg.num_rbs; ++b) {
      a.rb_owner.push_back(1 + static_cast<sched::RobotId>(rng.below(static_cast<std::uint64_t>(cfg.num_robots))));
    }
    const auto rates = radio::robot_rates(a.rb_owner, snr, cfg);
    const double top = *std::max_element(rates.rates_bps.begin(), rates.rates_bps.end());
    ObjectiveSpec obj;
    obj.kind = ObjectiveKind::QosSumRate;
    // Every fourth case puts R_min exactly on one of the rates.
    obj.min_rate_bps = c % 4 == 0
                           ? rates.rates_bps[rng.below(rates.rates_bps.size())]
                           : rng.uniform(0.0, 1.2 * top);
    cfg.objective = obj;
    cfg.min_rate_bps = obj.min_rate_bps;

    double oracle = 0.0;
    for (const double r : rates.rates_bps) {
      if (r >= obj.min_rate_bps) {
        oracle += r;
      } else {
        ++clamped_entries;
      }
    }
    double via_clamp = 0.0;
    for (const double r : radio::clamp_qos(rates, obj.min_rate_bps).rates_bps) via_clamp += r;
    const double got = sched::evaluate(a, snr, cfg, obj);
    const double fast = sched::Evaluator(snr, cfg, obj).score(a.rb_owner);
    if (got == oracle && via_clamp == oracle && fast == oracle) ++equal;
  }
  return {equal == kClampCases, fmt("%d/%d exact matches (%d sub-threshold entries zeroed)", equal,
                                    kClampCases, clamped_entries)};
}

// 5 ---------------------------------------------------------------------
Outcome reflection_geometry() {
  const auto t0 = Clock::now();
  int compared = 0;
  int disagree = 0;
  int far = 0;
  int traced = 0;
  double worst_dist = 0.0;
  double worst_residual = 0.0;
  for (int k = 0; k < kScenes; ++k) {
    const auto rs = testing::random_scene(static_cast<std::uint64_t>(k));
    ChannelSceneConfig cc;
    cc.buildings = rs.buildings;
    cc.bs_pos = rs.bs;
    const auto scene = channel::make_scene(cc);
    for (const auto& f : scene.facades) {
      if (f.side(rs.bs) <= 0.0 || f.side(rs.user) <= 0.0) continue;
      ++compared;
      const auto m = channel::mirror_reflection_point(rs.bs, rs.user, f);
      const auto o = channel::grid_search_reflection_oracle(rs.bs, rs.user, f, kOracleResolutionM);
      if (m.has_value() != o.interior_solution) {
        ++disagree;
        continue;
      }
      if (m) {
        const double d = distance(*m, o.point);
        worst_dist = std::max(worst_dist, d);
        if (d >= kPositionTolM) ++far;
      }
    }
    for (const auto& p : channel::trace_paths(scene, rs.user)) {
      if (p.kind != channel::Path::Kind::SingleReflection) continue;
      ++traced;
      const auto& f = scene.facades[static_cast<std::size_t>(p.facade)];
      worst_residual =
          std::max(worst_residual, channel::reflection_residual_rad(rs.bs, rs.user, p.reflection_point, f));
    }
  }
  const double t = seconds_since(t0);
  return {disagree == 0 && far == 0 && worst_residual < kResidualTolRad && t < kGeometryBudgetS,
          fmt("%d facade pairs: %d existence mismatches, %d beyond %.0f cm (worst %.4f m); "
              "%d traced reflections, worst residual %.3g rad; %.1f s",
              compared, disagree, far, 100 * kPositionTolM, worst_dist, traced, worst_residual, t)};
}

// 6 ---------------------------------------------------------------------
double nmse_of(const std::vector<channel::PredictorSummary>& v, const std::string& name) {
  for (const auto& s : v) {
    if (s.predictor == name) return s.nmse_db;
  }
  return std::nan("");
}

Outcome channel_ordering() {
  std::ostringstream detail;
  bool floor_ok = true;
  detail << "geom";
  for (int nb = 1; nb <= 4; ++nb) {
    auto c = channel::fixture_scene(nb);
    c.predictors = {"geom"};
    const double g = nmse_of(channel::evaluate_predictors(c), "geom");
    floor_ok = floor_ok && g <= kFloorDb;
    detail << fmt(" %d:%.1f", nb, g);
  }
  detail << " dB;";

  // Fixtures 3 and 4 have buildings on both sides of the road.
  bool ckm_ok = true;
  for (int nb = 3; nb <= 4; ++nb) {
    auto c = channel::fixture_scene(nb);
    c.predictors = {"linear", "nn"};
    c.training_spacing_m = kDenseTrainingSpacingM;
    const auto r = channel::evaluate_predictors(c);
    const double lin = nmse_of(r, "linear");
    const double nn = nmse_of(r, "nn");
    ckm_ok = ckm_ok && nn <= lin;
    detail << fmt(" scene %d nn %.2f vs linear %.2f dB;", nb, nn, lin);
  }

  const auto c4 = channel::fixture_scene(4);
  std::vector<double> shifts;
  for (int i = 0; i * kShiftStepM <= kMaxShiftM + 1e-12; ++i) shifts.push_back(i * kShiftStepM);
  const auto sweep = channel::perturbation_sweep(channel::make_scene(c4), c4.grid.points(), shifts);
  bool monotone = true;
  for (std::size_t i = 1; i < sweep.size(); ++i) monotone = monotone && sweep[i] >= sweep[i - 1];
  detail << " sweep";
  for (const double v : sweep) detail << fmt(" %.2f", v);
  detail << (monotone ? " (monotone)" : " (not monotone)");

  detail << fmt(" [floor %s, ckm order %s, sweep %s]", floor_ok ? "ok" : "FAIL", ckm_ok ? "ok" : "FAIL",
                monotone ? "ok" : "FAIL");
  return {floor_ok && ckm_ok && monotone, detail.str()};
}

// 7 ---------------------------------------------------------------------
Outcome traffic_ordering() {
  int greedy_wins = 0;
  int vue_wins = 0;
  int violations = 0;
  long steps = 0;
  for (int seed = 0; seed < kTrafficSeeds; ++seed) {
    auto run = [&](const std::string& controller, ObservationView view) {
      TrafficConfig cfg;
      cfg.num_vehicles = kTrafficVehicles;
      cfg.controller = controller;
      cfg.view = view;
      auto c = traffic::make_controller(cfg);
      auto rng = stream(static_cast<std::uint64_t>(seed), "traffic");
      return traffic::run_episode(cfg, *c, rng, [&](const traffic::TrafficState& s) {
        ++steps;
        bool ok = traffic::min_lane_spacing(s) >= cfg.headway_m - 1e-9 &&
                  s.crossed + s.uncrossed() == s.spawned && s.spawned == cfg.num_vehicles;
        for (const auto& v : s.vehicles) {
          ok = ok && v.speed_mps >= 0.0 && v.speed_mps <= cfg.free_flow_speed_mps;
        }
        if (!ok) ++violations;
      });
    };
    const auto rr = run("rr", ObservationView::VueMultiView);
    const auto greedy = run("greedy", ObservationView::VueMultiView);
    const auto rsu = run("greedy", ObservationView::RsuTopView);
    if (greedy.avg_speed_mps >= rr.avg_speed_mps) ++greedy_wins;
    if (greedy.avg_speed_mps >= rsu.avg_speed_mps) ++vue_wins;
  }
  return {greedy_wins >= kGreedyRequired && vue_wins >= kViewRequired && violations == 0,
          fmt("greedy >= rr in %d/%d (need %d), vue >= rsu in %d/%d (need %d), %d invariant "
              "violations over %ld steps",
              greedy_wins, kTrafficSeeds, kGreedyRequired, vue_wins, kTrafficSeeds, kViewRequired,
              violations, steps)};
}

// 8 ---------------------------------------------------------------------
std::vector<std::string> reference_configs() {
  return {
      R"({"track":"scheduling","seed":11,"scheduling":{"num_robots":3,"method":"oracle",
          "buffer_occupancy_prob":1.0}})",
      R"({"track":"scheduling","seed":12,"scheduling":{"num_robots":6,"method":"ga",
          "ga":{"generations":40}}})",
      R"({"track":"scheduling","seed":13,"scheduling":{"num_robots":4,"method":"opro","engine":"mock",
          "buffer_occupancy_prob":1.0,"opro":{"max_iterations":80},
          "task_switch":{"at_iteration":40,"objective2":{"kind":"qos_sum_rate","min_rate_bps":1e7}}}})",
      R"({"track":"traffic","seed":14,"traffic":{"num_vehicles":60,"controller":"greedy",
          "view":"rsu"}})",
      R"({"track":"channel","seed":15,"channel":{"buildings":[{"x_min":-20,"x_max":-0.3,"y_min":4,
          "y_max":10,"height":15},{"x_min":6.3,"x_max":20,"y_min":-10,"y_max":-4,"height":14}],
          "bs_pos":[2.1,-12,10],"grid":{"x_min":-5,"x_max":5,"y_min":-2,"y_max":2,"spacing_m":1.0},
          "training_spacing_m":0.5}})",
  };
}

bool file_contains(const fs::path& p, const std::string& needle) {
  return app::read_file(p).find(needle) != std::string::npos;
}

Outcome determinism_offline(Clock::time_point suite_start) {
  // No endpoint is configured, so a live call cannot even be attempted.
  const char* base = std::getenv("AUTOCOMM_BASE_URL");
  const bool no_endpoint = base == nullptr || *base == '\0';
  bool live_refused = false;
  try {
    llm::make_chat_client("chat");  // constructing validates; nothing is sent
  } catch (const std::exception&) {
    live_refused = true;
  }

  // A sentinel key in the environment must not reach any artifact.
  const std::string sentinel = "sk-acceptance-7d3e91b4";
  ::setenv("AUTOCOMM_API_KEY", sentinel.c_str(), 1);

  const auto dir = scratch_dir("determinism");
  int identical = 0;
  int leaked = 0;
  const auto configs = reference_configs();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto sc = build_scenario(std::string_view(configs[i]));
    const std::string stem = "c" + std::to_string(i);
    const auto first = app::run(sc, {dir, stem});
    const auto second = app::rerun(first.config_path, {dir, stem + "_rerun"});
    bool same = first.outputs.size() == second.outputs.size() &&
                app::read_file(first.config_path) == app::read_file(second.config_path);
    for (std::size_t k = 0; same && k < first.outputs.size(); ++k) {
      same = app::read_file(first.outputs[k]) == app::read_file(second.outputs[k]);
    }
    if (same) ++identical;
  }
  ::unsetenv("AUTOCOMM_API_KEY");
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && file_contains(e.path(), sentinel)) ++leaked;
  }

  const double t = seconds_since(suite_start);
  const int n = static_cast<int>(configs.size());
  return {identical == n && no_endpoint && live_refused && leaked == 0 && t < kSuiteBudgetS,
          fmt("%d/%d reruns byte-identical, endpoint %s, live client %s, %d artifacts with the key, "
              "suite so far %.1f s",
              identical, n, no_endpoint ? "unset" : "SET", live_refused ? "refused" : "ANSWERED", leaked,
              t)};
}

}  // namespace

int main(int argc, char** argv) {
  const auto suite_start = Clock::now();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"scheduling oracle equivalence", scheduling_oracle_equivalence},
      {"opro loop soundness", opro_loop_soundness},
      {"task switch", task_switch},
      {"zero-rate clamping", zero_rate_clamping},
      {"reflection geometry", reflection_geometry},
      {"channel track ordering", channel_ordering},
      {"traffic ordering", traffic_ordering},
      {"determinism and offline CI", [&] { return determinism_offline(suite_start); }},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) {
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);
  }

  int failed = 0;
  for (const int id : selected) {
    if (id < 1 || id > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 64;
    }
    const auto& [name, fn] = criteria[static_cast<std::size_t>(id - 1)];
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  return failed;
}
