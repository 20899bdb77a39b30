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

// Scenario configuration shared by the scheduling, channel and traffic tracks.
// All quantities are SI (meters, seconds, Hz, bits/s); dBm/dB appear only in
// the link-budget parameters where they are conventional.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "autocomm/core/vec3.hpp"

namespace autocomm {

enum class Track { Scheduling, Channel, Traffic };

// ---------------------------------------------------------------- scheduling

enum class ObjectiveKind { ProportionalFairness, QosSumRate, QosPf };

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::ProportionalFairness;
  double min_rate_bps = 0.0;  // R_min; ignored by ProportionalFairness
  double epsilon = 1.0;       // rate floor inside log2, bits/s

  bool has_qos() const { return kind != ObjectiveKind::ProportionalFairness; }
  friend bool operator==(const ObjectiveSpec&, const ObjectiveSpec&) = default;
};

enum class Fading { None, Rayleigh };

struct RadioParams {
  double tx_power_dbm = 23.0;
  double noise_dbm_per_rb = -101.0;
  double pathloss_ref_db = 40.0;  // at 1 m
  double pathloss_exponent = 3.0;
  Fading fading = Fading::None;
  // Robots closer than this to the CU are evaluated at this distance.
  double min_distance_m = 1.0;
  friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

struct GaParams {
  int population = 100;
  int tournament_size = 3;
  double crossover_prob = 0.9;
  double mutation_prob = 0.05;  // per gene
  int generations = 200;
  int elitism = 2;
  friend bool operator==(const GaParams&, const GaParams&) = default;
};

/// Proposal-diversity hint per OPRO iteration. LinearDecay goes from
/// `start` to 0 over the first `decay_fraction` of the iterations and stays
/// at 0 afterwards; Constant always returns `start`.
struct ExploreSchedule {
  enum class Kind { LinearDecay, Constant };
  Kind kind = Kind::LinearDecay;
  double start = 1.0;
  double decay_fraction = 0.5;

  double at(int iteration, int max_iterations) const;
  friend bool operator==(const ExploreSchedule&, const ExploreSchedule&) = default;
};

struct OproParams {
  int max_iterations = 200;
  int history_window = 10;
  int stop_patience = 30;
  ExploreSchedule explore;
  friend bool operator==(const OproParams&, const OproParams&) = default;
};

/// Mid-run objective change for the OPRO loop and scheduling sweeps.
struct TaskSwitch {
  int at_iteration = 100;
  ObjectiveSpec objective2;
  friend bool operator==(const TaskSwitch&, const TaskSwitch&) = default;
};

struct SchedulingConfig {
  int num_robots = 10;
  double cell_radius_m = 100.0;
  double bandwidth_hz = 2.0e7;
  int num_rbs = 9;
  double min_rate_bps = 0.0;
  ObjectiveSpec objective;
  double buffer_occupancy_prob = 0.8;
  int max_rbs_per_robot = 0;  // 0 disables the excessive-RB guard
  RadioParams radio;
  std::string method = "ga";  // rr | ga | oracle | opro
  std::string engine = "mock";  // mock | chat | replay:<cassette>
  GaParams ga;
  OproParams opro;
  std::optional<TaskSwitch> task_switch;

  /// Effective per-robot RB cap (num_rbs when the guard is disabled).
  int rb_cap() const { return max_rbs_per_robot > 0 ? max_rbs_per_robot : num_rbs; }
  double rb_bandwidth_hz() const { return bandwidth_hz / num_rbs; }
  friend bool operator==(const SchedulingConfig&, const SchedulingConfig&) = default;
};

// ------------------------------------------------------------------- channel

/// Axis-aligned building footprint extruded from the ground to `height`.
struct Building {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
  double height = 0.0;
  friend bool operator==(const Building&, const Building&) = default;
};

/// Rectangular grid of user positions at fixed height.
struct GridSpec {
  double x_min = -10.0;
  double x_max = 10.0;
  double y_min = -3.0;
  double y_max = 3.0;
  double spacing_m = 0.5;
  double user_z = 1.5;

  std::vector<Vec3> points() const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct ChannelSceneConfig {
  std::vector<Building> buildings;
  Vec3 bs_pos{0.0, -12.0, 10.0};
  double carrier_hz = 3.5e9;
  int num_antennas = 16;
  std::complex<double> reflection_coeff{0.6, 0.0};
  // Evaluation set for the `channel` run; training grids for the CKM and
  // linear-GCP predictors use `training_spacing_m` over the same extent.
  GridSpec grid;
  double training_spacing_m = 0.25;
  std::vector<std::string> predictors{"geom", "linear", "nn"};
  friend bool operator==(const ChannelSceneConfig&, const ChannelSceneConfig&) = default;
};

// ------------------------------------------------------------------- traffic

enum class ObservationView { VueMultiView, RsuTopView };

struct TrafficConfig {
  double area_m = 100.0;
  double lane_width_total_m = 20.0;
  int num_vehicles = 80;
  double free_flow_speed_mps = 14.0;
  double headway_m = 5.0;
  double decision_interval_s = 5.0;
  double min_green_s = 5.0;
  double episode_s = 300.0;
  double dt_s = 0.5;
  double startup_delay_s = 2.0;
  double saturation_headway_s = 2.0;
  double spawn_range_m = 100.0;  // spawn distance to the stop line in [0, spawn_range_m]
  int visible_depth = 8;         // RSU top-view occlusion depth
  int byte_budget = 256;
  std::string controller = "greedy";  // rr | greedy | engine | replay:<cassette>
  double rr_green_s = 5.0;  // one phase per decision epoch
  ObservationView view = ObservationView::VueMultiView;

  /// Width of the box a vehicle must clear after the stop line.
  double box_length_m() const { return lane_width_total_m; }
  friend bool operator==(const TrafficConfig&, const TrafficConfig&) = default;
};

// ------------------------------------------------------------------ scenario

struct ScenarioConfig {
  Track track = Track::Scheduling;
  std::uint64_t seed = 0;
  std::optional<SchedulingConfig> scheduling;
  std::optional<ChannelSceneConfig> channel;
  std::optional<TrafficConfig> traffic;
  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Parses and validates a JSON scenario document, applying defaults.
/// Throws ConfigError naming the line (parse errors) or field (everything else).
ScenarioConfig build_scenario(std::string_view raw_config);
ScenarioConfig build_scenario(const nlohmann::json& doc);

/// Fully expanded JSON (every default written out).
nlohmann::json to_json(const ScenarioConfig& cfg);
std::string serialize(const ScenarioConfig& cfg);

/// SHA-256 of the canonical serialization.
std::string config_digest(const ScenarioConfig& cfg);

// Name <-> enum helpers shared with the CLI.
std::string_view to_string(Track t);
std::string_view to_string(ObjectiveKind k);
std::string_view to_string(ObservationView v);
ObjectiveKind parse_objective_kind(std::string_view name);
ObservationView parse_view(std::string_view name);

nlohmann::json to_json(const ObjectiveSpec& o);
ObjectiveSpec objective_from_json(const nlohmann::json& j, double default_min_rate_bps,
                                  const std::string& path = "objective");

/// Validators used by build_scenario; exposed so programmatic configs can be
/// checked with the same rules.
/// Parses and validates a `channel` object (also the scene file format).
ChannelSceneConfig channel_config_from_json(const nlohmann::json& j);

void validate(const SchedulingConfig& cfg);
void validate(const ChannelSceneConfig& cfg);
void validate(const TrafficConfig& cfg);

}  // namespace autocomm
