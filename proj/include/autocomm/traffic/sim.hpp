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

#include <array>
#include <functional>
#include <string_view>
#include <vector>

#include "autocomm/core/config.hpp"
#include "autocomm/core/error.hpp"
#include "autocomm/core/rng.hpp"

namespace autocomm::traffic {

enum class Approach { N = 0, S = 1, E = 2, W = 3 };
enum class Intent { Left = 0, Straight = 1, Right = 2 };

inline constexpr int kNumApproaches = 4;
inline constexpr int kLanesPerApproach = 2;  // 0: left-turn lane, 1: straight and right
inline constexpr int kNumLanes = kNumApproaches * kLanesPerApproach;

std::string_view to_string(Approach a);
std::string_view to_string(Intent i);

/// Protected phases, numbered 1-4 in cycle order.
enum class Phase { NsStraightRight = 1, NsLeft = 2, EwStraightRight = 3, EwLeft = 4 };

inline constexpr std::array<Phase, 4> kAllPhases{Phase::NsStraightRight, Phase::NsLeft,
                                                 Phase::EwStraightRight, Phase::EwLeft};

std::string_view to_string(Phase p);
int phase_index(Phase p);
Phase phase_from_index(int index);  // 1-4; throws InvalidArgument otherwise

bool is_green(Phase p, Approach a, Intent i);

inline int lane_of(Intent i) { return i == Intent::Left ? 0 : 1; }
inline int lane_index(Approach a, Intent i) {
  return static_cast<int>(a) * kLanesPerApproach + lane_of(i);
}

struct Vehicle {
  int id = 0;
  Approach approach = Approach::N;
  Intent intent = Intent::Straight;
  double pos_m = 0.0;  // distance to the stop line; negative once crossed
  double speed_mps = 0.0;
  bool crossed = false;
  bool done = false;   // cleared the box and left the metric pool
  double wait_s = 0.0; // accumulated time stopped before the line

  int lane() const { return lane_index(approach, intent); }
};

struct TrafficState {
  double time_s = 0.0;
  Phase phase = Phase::NsStraightRight;
  double phase_since_s = 0.0;
  std::vector<Vehicle> vehicles;
  std::array<double, kNumLanes> discharge_ready_s{};  // earliest next crossing per lane
  int spawned = 0;
  int crossed = 0;

  int in_system() const;
  int uncrossed() const;
};

class EmptyEpisode : public Error {
 public:
  using Error::Error;
};

/// Approach and intent uniform, distance to the stop line uniform on
/// [0, spawn_range_m], free-flow speed. Vehicles drawn too close to a
/// predecessor on the same lane are pushed back to headway_m spacing.
TrafficState spawn_vehicles(const TrafficConfig& cfg, RngStream& rng);

/// Advances one dt. A request to change phase is honored only once the
/// current phase has been green for min_green_s. Returns the phase in force
/// during the step.
Phase step(TrafficState& state, Phase requested, const TrafficConfig& cfg);

struct TrafficMetrics {
  double avg_speed_mps = 0.0;
  int throughput = 0;
  double mean_wait_s = 0.0;
  int steps = 0;
  int phase_changes = 0;
};

class Controller;

/// Called after every step; used by invariant checks.
using StepObserver = std::function<void(const TrafficState&)>;

TrafficMetrics run_episode(const TrafficConfig& cfg, Controller& controller, RngStream& rng,
                           const StepObserver& observer = {});

/// Runs an episode from a prepared state.
TrafficMetrics run_from_state(TrafficState state, const TrafficConfig& cfg, Controller& controller,
                              RngStream& rng, const StepObserver& observer = {});

/// Smallest spacing between consecutive vehicles of any lane still in the
/// system (infinity with fewer than two per lane).
double min_lane_spacing(const TrafficState& state);

}  // namespace autocomm::traffic
