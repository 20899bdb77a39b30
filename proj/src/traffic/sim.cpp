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

#include "autocomm/traffic/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "autocomm/traffic/controllers.hpp"
#include "autocomm/traffic/observation.hpp"

namespace autocomm::traffic {

namespace {

constexpr double kTimeEps = 1e-9;

// Vehicle indices per lane, ordered head first.
std::array<std::vector<std::size_t>, kNumLanes> lanes_of(const TrafficState& s) {
  std::array<std::vector<std::size_t>, kNumLanes> lanes;
  for (std::size_t i = 0; i < s.vehicles.size(); ++i) {
    if (!s.vehicles[i].done) lanes[static_cast<std::size_t>(s.vehicles[i].lane())].push_back(i);
  }
  for (auto& lane : lanes) {
    std::stable_sort(lane.begin(), lane.end(), [&](std::size_t a, std::size_t b) {
      return s.vehicles[a].pos_m < s.vehicles[b].pos_m;
    });
  }
  return lanes;
}

bool lane_green(Phase p, int lane) {
  const auto a = static_cast<Approach>(lane / kLanesPerApproach);
  return is_green(p, a, lane % kLanesPerApproach == 0 ? Intent::Left : Intent::Straight);
}

}  // namespace

std::string_view to_string(Approach a) {
  static constexpr std::string_view names[] = {"N", "S", "E", "W"};
  return names[static_cast<int>(a)];
}

std::string_view to_string(Intent i) {
  static constexpr std::string_view names[] = {"left", "straight", "right"};
  return names[static_cast<int>(i)];
}

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::NsStraightRight: return "NS-Straight+Right";
    case Phase::NsLeft: return "NS-Left";
    case Phase::EwStraightRight: return "EW-Straight+Right";
    case Phase::EwLeft: return "EW-Left";
  }
  return "?";
}

int phase_index(Phase p) { return static_cast<int>(p); }

Phase phase_from_index(int index) {
  if (index < 1 || index > 4) throw InvalidArgument("phase index must be 1-4, got " + std::to_string(index));
  return static_cast<Phase>(index);
}

bool is_green(Phase p, Approach a, Intent i) {
  const bool ns = a == Approach::N || a == Approach::S;
  const bool left = i == Intent::Left;
  switch (p) {
    case Phase::NsStraightRight: return ns && !left;
    case Phase::NsLeft: return ns && left;
    case Phase::EwStraightRight: return !ns && !left;
    case Phase::EwLeft: return !ns && left;
  }
  return false;
}

int TrafficState::in_system() const {
  return static_cast<int>(std::count_if(vehicles.begin(), vehicles.end(),
                                        [](const Vehicle& v) { return !v.done; }));
}

int TrafficState::uncrossed() const {
  return static_cast<int>(std::count_if(vehicles.begin(), vehicles.end(),
                                        [](const Vehicle& v) { return !v.crossed; }));
}

TrafficState spawn_vehicles(const TrafficConfig& cfg, RngStream& rng) {
  TrafficState s;
  s.vehicles.reserve(static_cast<std::size_t>(cfg.num_vehicles));
  for (int i = 0; i < cfg.num_vehicles; ++i) {
    Vehicle v;
    v.id = i + 1;
    v.approach = static_cast<Approach>(rng.below(kNumApproaches));
    v.intent = static_cast<Intent>(rng.below(3));
    v.pos_m = rng.uniform(0.0, cfg.spawn_range_m);
    v.speed_mps = cfg.free_flow_speed_mps;
    s.vehicles.push_back(v);
  }
  for (const auto& lane : lanes_of(s)) {
    for (std::size_t k = 1; k < lane.size(); ++k) {
      auto& v = s.vehicles[lane[k]];
      v.pos_m = std::max(v.pos_m, s.vehicles[lane[k - 1]].pos_m + cfg.headway_m);
    }
  }
  s.spawned = cfg.num_vehicles;
  return s;
}

Phase step(TrafficState& s, Phase requested, const TrafficConfig& cfg) {
  const double t = s.time_s;
  const double dt = cfg.dt_s;
  const double t_end = t + dt;
  const double vff = cfg.free_flow_speed_mps;
  auto lanes = lanes_of(s);

  if (requested != s.phase && t - s.phase_since_s >= cfg.min_green_s - kTimeEps) {
    const Phase old = s.phase;
    s.phase = requested;
    s.phase_since_s = t;
    for (int l = 0; l < kNumLanes; ++l) {
      if (!lane_green(s.phase, l) || lane_green(old, l)) continue;
      for (const auto idx : lanes[static_cast<std::size_t>(l)]) {
        const auto& v = s.vehicles[idx];
        if (v.crossed) continue;
        if (v.speed_mps == 0.0) {
          s.discharge_ready_s[static_cast<std::size_t>(l)] =
              std::max(s.discharge_ready_s[static_cast<std::size_t>(l)], t + cfg.startup_delay_s);
        }
        break;  // head only
      }
    }
  }

  for (int l = 0; l < kNumLanes; ++l) {
    const bool green = lane_green(s.phase, l);
    auto& ready = s.discharge_ready_s[static_cast<std::size_t>(l)];
    double prev_new = -std::numeric_limits<double>::infinity();
    for (const auto idx : lanes[static_cast<std::size_t>(l)]) {
      auto& v = s.vehicles[idx];
      const double free = v.pos_m - vff * dt;
      double limit = prev_new + cfg.headway_m;
      const bool was_crossed = v.crossed;
      if (!was_crossed && !(green && t_end >= ready - kTimeEps)) limit = std::max(limit, 0.0);
      const double next = std::max(free, limit);
      v.speed_mps = next == free ? vff : std::clamp((v.pos_m - next) / dt, 0.0, vff);
      if (!was_crossed && v.speed_mps == 0.0) v.wait_s += dt;
      v.pos_m = next;
      if (!was_crossed && next < 0.0) {
        v.crossed = true;
        ++s.crossed;
        ready = t_end + cfg.saturation_headway_s;
      }
      if (v.crossed && v.pos_m <= -cfg.box_length_m()) v.done = true;
      prev_new = next;
    }
  }
  s.time_s = t_end;
  return s.phase;
}

double min_lane_spacing(const TrafficState& s) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& lane : lanes_of(s)) {
    for (std::size_t k = 1; k < lane.size(); ++k) {
      best = std::min(best, s.vehicles[lane[k]].pos_m - s.vehicles[lane[k - 1]].pos_m);
    }
  }
  return best;
}

TrafficMetrics run_episode(const TrafficConfig& cfg, Controller& controller, RngStream& rng,
                           const StepObserver& observer) {
  if (cfg.num_vehicles == 0) throw EmptyEpisode("traffic episode has no vehicles");
  auto spawn_rng = rng.derive("spawn");
  return run_from_state(spawn_vehicles(cfg, spawn_rng), cfg, controller, rng, observer);
}

TrafficMetrics run_from_state(TrafficState s, const TrafficConfig& cfg, Controller& controller,
                              RngStream& rng, const StepObserver& observer) {
  if (s.vehicles.empty()) throw EmptyEpisode("traffic episode has no vehicles");
  auto ctl_rng = rng.derive("controller");
  const int total_steps = static_cast<int>(std::llround(cfg.episode_s / cfg.dt_s));
  const int decision_every = std::max(1, static_cast<int>(std::llround(cfg.decision_interval_s / cfg.dt_s)));

  TrafficMetrics m;
  double speed_sum = 0.0;
  long samples = 0;
  Phase requested = s.phase;
  for (int k = 0; k < total_steps && s.in_system() > 0; ++k) {
    if (k % decision_every == 0) {
      const auto obs = encode_observation(s, cfg.view, cfg.byte_budget, cfg.visible_depth);
      requested = controller.decide(obs, s.time_s, ctl_rng);
    }
    std::vector<char> active(s.vehicles.size());
    for (std::size_t i = 0; i < s.vehicles.size(); ++i) active[i] = !s.vehicles[i].done;
    const Phase before = s.phase;
    step(s, requested, cfg);
    if (s.phase != before) ++m.phase_changes;
    for (std::size_t i = 0; i < s.vehicles.size(); ++i) {
      if (!active[i]) continue;
      speed_sum += s.vehicles[i].speed_mps;
      ++samples;
    }
    ++m.steps;
    if (observer) observer(s);
  }
  m.avg_speed_mps = samples > 0 ? speed_sum / static_cast<double>(samples) : 0.0;
  m.throughput = s.crossed;
  double wait = 0.0;
  for (const auto& v : s.vehicles) wait += v.wait_s;
  m.mean_wait_s = wait / static_cast<double>(s.vehicles.size());
  return m;
}

}  // namespace autocomm::traffic
