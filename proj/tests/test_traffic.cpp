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

#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "autocomm/traffic/controllers.hpp"
#include "autocomm/traffic/observation.hpp"
#include "autocomm/traffic/sim.hpp"

namespace autocomm::traffic {
namespace {

Vehicle make_vehicle(int id, Approach a, Intent i, double pos) {
  Vehicle v;
  v.id = id;
  v.approach = a;
  v.intent = i;
  v.pos_m = pos;
  v.speed_mps = 14.0;
  return v;
}

TrafficState state_of(std::vector<Vehicle> vs, Phase phase = Phase::NsStraightRight) {
  TrafficState s;
  s.phase = phase;
  s.vehicles = std::move(vs);
  s.spawned = static_cast<int>(s.vehicles.size());
  return s;
}

ObservationMessage vue_obs(std::array<std::array<int, 3>, 4> intents, std::array<double, 4> waits = {},
                           Phase phase = Phase::NsStraightRight) {
  ObservationMessage m;
  m.phase = phase;
  for (std::size_t a = 0; a < 4; ++a) {
    m.approaches[a].intents = intents[a];
    m.approaches[a].head_wait_s = waits[a];
    m.approaches[a].queue_len = intents[a][0] + intents[a][1] + intents[a][2];
  }
  return m;
}

// ------------------------------------------------------------------ phases

TEST(Phase, GreenTable) {
  EXPECT_TRUE(is_green(Phase::NsStraightRight, Approach::N, Intent::Right));
  EXPECT_TRUE(is_green(Phase::NsStraightRight, Approach::S, Intent::Straight));
  EXPECT_FALSE(is_green(Phase::NsStraightRight, Approach::N, Intent::Left));
  EXPECT_TRUE(is_green(Phase::EwLeft, Approach::W, Intent::Left));
  EXPECT_FALSE(is_green(Phase::EwLeft, Approach::N, Intent::Left));
  // Every movement is served by exactly one phase.
  for (int a = 0; a < 4; ++a) {
    for (int i = 0; i < 3; ++i) {
      int served = 0;
      for (Phase p : kAllPhases) served += is_green(p, static_cast<Approach>(a), static_cast<Intent>(i));
      EXPECT_EQ(served, 1);
    }
  }
}

TEST(Phase, IndexRoundTripAndRange) {
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(phase_index(phase_from_index(k)), k);
  EXPECT_THROW(phase_from_index(0), InvalidArgument);
  EXPECT_THROW(phase_from_index(5), InvalidArgument);
}

// ------------------------------------------------------------------- spawn

TEST(Spawn, EightyVehiclesWithHeadway) {
  TrafficConfig cfg;
  auto rng = stream(1, "spawn");
  const auto s = spawn_vehicles(cfg, rng);
  ASSERT_EQ(s.vehicles.size(), 80u);
  EXPECT_EQ(s.spawned, 80);
  std::set<int> ids;
  for (const auto& v : s.vehicles) {
    ids.insert(v.id);
    EXPECT_GE(v.pos_m, 0.0);
    EXPECT_EQ(v.speed_mps, cfg.free_flow_speed_mps);
  }
  EXPECT_EQ(ids.size(), 80u);
  EXPECT_GE(min_lane_spacing(s), cfg.headway_m - 1e-9);
}

TEST(Spawn, DeterministicPerSeed) {
  TrafficConfig cfg;
  auto a = stream(4, "spawn");
  auto b = stream(4, "spawn");
  const auto sa = spawn_vehicles(cfg, a);
  const auto sb = spawn_vehicles(cfg, b);
  for (std::size_t i = 0; i < sa.vehicles.size(); ++i) {
    EXPECT_EQ(sa.vehicles[i].pos_m, sb.vehicles[i].pos_m);
    EXPECT_EQ(sa.vehicles[i].lane(), sb.vehicles[i].lane());
  }
}

TEST(Spawn, ZeroVehiclesIsEmptyEpisode) {
  TrafficConfig cfg;
  cfg.num_vehicles = 0;
  QueueGreedyController c;
  auto rng = stream(1, "t");
  EXPECT_THROW(run_episode(cfg, c, rng), EmptyEpisode);
}

// ---------------------------------------------------------------- dynamics

TEST(Step, FreeFlowOnGreen) {
  TrafficConfig cfg;
  auto s = state_of({make_vehicle(1, Approach::N, Intent::Straight, 50.0)});
  step(s, Phase::NsStraightRight, cfg);
  EXPECT_DOUBLE_EQ(s.vehicles[0].pos_m, 50.0 - 14.0 * 0.5);
  EXPECT_DOUBLE_EQ(s.vehicles[0].speed_mps, 14.0);
  EXPECT_DOUBLE_EQ(s.time_s, 0.5);
}

TEST(Step, PermanentRedStacksAtHeadway) {
  TrafficConfig cfg;
  auto s = state_of({make_vehicle(1, Approach::E, Intent::Straight, 20.0),
                     make_vehicle(2, Approach::E, Intent::Right, 40.0),
                     make_vehicle(3, Approach::E, Intent::Straight, 90.0)});
  for (int k = 0; k < 40; ++k) step(s, Phase::NsStraightRight, cfg);
  std::vector<double> pos;
  for (const auto& v : s.vehicles) {
    EXPECT_EQ(v.speed_mps, 0.0);
    EXPECT_FALSE(v.crossed);
    pos.push_back(v.pos_m);
  }
  std::sort(pos.begin(), pos.end());
  EXPECT_NEAR(pos[0], 0.0, 1e-12);
  EXPECT_NEAR(pos[1], 5.0, 1e-12);
  EXPECT_NEAR(pos[2], 10.0, 1e-12);
}

TEST(Step, StoppedHeadCrossesWithinStartupDelayOfGreen) {
  TrafficConfig cfg;
  auto s = state_of({make_vehicle(1, Approach::E, Intent::Straight, 3.0)});
  for (int k = 0; k < 20; ++k) step(s, Phase::NsStraightRight, cfg);  // 10 s of red
  ASSERT_EQ(s.vehicles[0].speed_mps, 0.0);
  const double onset = s.time_s;
  while (!s.vehicles[0].crossed && s.time_s < onset + 10.0) step(s, Phase::EwStraightRight, cfg);
  ASSERT_TRUE(s.vehicles[0].crossed);
  EXPECT_LE(s.time_s - onset, cfg.startup_delay_s + 1e-9);
  EXPECT_GT(s.time_s - onset, cfg.startup_delay_s - cfg.dt_s);  // not before the startup delay
}

TEST(Step, ChangeBeforeMinGreenIsIgnored) {
  TrafficConfig cfg;
  cfg.min_green_s = 5.0;
  auto s = state_of({make_vehicle(1, Approach::N, Intent::Straight, 80.0)});
  s.time_s = 1.0;
  EXPECT_EQ(step(s, Phase::EwLeft, cfg), Phase::NsStraightRight);
  s.time_s = 5.0;
  EXPECT_EQ(step(s, Phase::EwLeft, cfg), Phase::EwLeft);
  EXPECT_DOUBLE_EQ(s.phase_since_s, 5.0);
}

TEST(Step, SaturationHeadwaySeparatesCrossings) {
  TrafficConfig cfg;
  std::vector<Vehicle> vs;
  for (int k = 0; k < 4; ++k) vs.push_back(make_vehicle(k + 1, Approach::N, Intent::Straight, 5.0 * k));
  auto s = state_of(vs);
  std::vector<double> cross_time(4, -1.0);
  for (int k = 0; k < 60; ++k) {
    step(s, Phase::NsStraightRight, cfg);
    for (std::size_t i = 0; i < 4; ++i) {
      if (s.vehicles[i].crossed && cross_time[i] < 0) cross_time[i] = s.time_s;
    }
  }
  std::sort(cross_time.begin(), cross_time.end());
  for (std::size_t i = 1; i < 4; ++i) EXPECT_GE(cross_time[i] - cross_time[i - 1], cfg.saturation_headway_s - 1e-9);
}

// -------------------------------------------------------------- controllers

TEST(RoundRobin, CyclesEveryGreenPeriodRegardlessOfObservation) {
  RoundRobinController rr(5.0);
  auto rng = stream(1, "rr");
  const ObservationMessage empty;
  const auto busy = vue_obs({{{9, 9, 9}, {9, 9, 9}, {0, 0, 0}, {0, 0, 0}}});
  const std::vector<int> expected{1, 2, 3, 4, 1, 2};
  for (int k = 0; k < 6; ++k) {
    EXPECT_EQ(phase_index(rr.decide(empty, 5.0 * k, rng)), expected[static_cast<std::size_t>(k)]);
    EXPECT_EQ(rr.decide(busy, 5.0 * k + 2.5, rng), rr.decide(empty, 5.0 * k, rng));
  }
  EXPECT_THROW(RoundRobinController(0.0), InvalidArgument);
}

TEST(Greedy, PicksPhaseWithLargestDemand) {
  QueueGreedyController g;
  auto rng = stream(1, "g");
  EXPECT_EQ(g.decide(vue_obs({{{0, 1, 0}, {0, 0, 0}, {0, 3, 2}, {0, 0, 0}}}), 0, rng), Phase::EwStraightRight);
  EXPECT_EQ(g.decide(vue_obs({{{4, 1, 0}, {2, 0, 0}, {0, 3, 2}, {0, 0, 0}}}), 0, rng), Phase::NsLeft);
}

TEST(Greedy, TieBrokenByHeadWaitThenPhaseOrder) {
  QueueGreedyController g;
  auto rng = stream(1, "g");
  const std::array<std::array<int, 3>, 4> even{{{0, 2, 0}, {0, 0, 0}, {0, 2, 0}, {0, 0, 0}}};
  EXPECT_EQ(g.decide(vue_obs(even, {1.0, 0.0, 7.5, 0.0}), 0, rng), Phase::EwStraightRight);
  EXPECT_EQ(g.decide(vue_obs(even), 0, rng), Phase::NsStraightRight);
}

TEST(Greedy, HoldsPhaseWhenNothingWaits) {
  QueueGreedyController g;
  auto rng = stream(1, "g");
  EXPECT_EQ(g.decide(vue_obs({}, {}, Phase::EwLeft), 0, rng), Phase::EwLeft);
}

TEST(Greedy, AlternatesAsQueuesDrain) {
  TrafficConfig cfg;
  std::vector<Vehicle> vs;
  for (int k = 0; k < 4; ++k) {
    vs.push_back(make_vehicle(2 * k + 1, Approach::N, Intent::Straight, 5.0 * k));
    vs.push_back(make_vehicle(2 * k + 2, Approach::E, Intent::Straight, 5.0 * k));
  }
  QueueGreedyController g;
  auto rng = stream(1, "g");
  std::set<Phase> seen;
  run_from_state(state_of(vs), cfg, g, rng, [&seen](const TrafficState& s) { seen.insert(s.phase); });
  EXPECT_TRUE(seen.count(Phase::NsStraightRight));
  EXPECT_TRUE(seen.count(Phase::EwStraightRight));
}

TEST(Greedy, RsuQueueCountsTowardBothPhasesOfAnAxis) {
  ObservationMessage m;
  m.view = ObservationView::RsuTopView;
  m.approaches[0].queue_len = 3;
  const auto d = QueueGreedyController::phase_demand(m);
  EXPECT_EQ(d, (std::array<double, 4>{3, 3, 0, 0}));
}

TEST(EngineControl, ParsePhase) {
  EXPECT_EQ(EngineController::parse_phase("phase 2"), 2);
  EXPECT_EQ(EngineController::parse_phase("I pick Phase: 3 because"), 3);
  EXPECT_EQ(EngineController::parse_phase(" 4.\n"), 4);
  EXPECT_EQ(EngineController::parse_phase("phase 7"), std::nullopt);
  EXPECT_EQ(EngineController::parse_phase("the east queue"), std::nullopt);
}

TEST(EngineControl, GarbageHoldsCurrentPhase) {
  auto engine = std::make_shared<opro::FunctionEngine>(
      "script", [n = 0](const std::string&, RngStream&) mutable { return ++n == 1 ? "phase 2" : "no clue"; });
  EngineController c(engine, 5.0);
  auto rng = stream(1, "e");
  ObservationMessage m;
  m.phase = Phase::EwLeft;
  EXPECT_EQ(c.decide(m, 0.0, rng), Phase::NsLeft);
  EXPECT_EQ(c.decide(m, 5.0, rng), Phase::EwLeft);
  ASSERT_EQ(c.log().size(), 2u);
  EXPECT_FALSE(c.log()[0].held);
  EXPECT_TRUE(c.log()[1].held);
}

TEST(EngineControl, EngineErrorHoldsAndIsLogged) {
  auto engine = std::make_shared<opro::FunctionEngine>(
      "down", [](const std::string&, RngStream&) -> std::string { throw opro::EngineError("offline"); });
  EngineController c(engine, 5.0);
  auto rng = stream(1, "e");
  ObservationMessage m;
  m.phase = Phase::NsLeft;
  EXPECT_EQ(c.decide(m, 0.0, rng), Phase::NsLeft);
  EXPECT_EQ(c.log().back().error, "offline");
}

TEST(EngineControl, SeededEngineEpisodeIsDeterministic) {
  TrafficConfig cfg;
  cfg.episode_s = 120.0;
  auto run = [&cfg] {
    auto engine = std::make_shared<opro::FunctionEngine>("rand", [](const std::string&, RngStream& r) {
      return "phase " + std::to_string(1 + r.below(4));
    });
    EngineController c(engine, cfg.min_green_s);
    auto rng = stream(9, "traffic");
    const auto m = run_episode(cfg, c, rng);
    return std::make_pair(m.avg_speed_mps, c.log().size());
  };
  EXPECT_EQ(run(), run());
}

TEST(Factory, KnownAndUnknownControllers) {
  TrafficConfig cfg;
  cfg.controller = "rr";
  EXPECT_EQ(make_controller(cfg)->name(), "rr");
  cfg.controller = "greedy";
  EXPECT_EQ(make_controller(cfg)->name(), "greedy");
  cfg.controller = "smart";
  EXPECT_THROW(make_controller(cfg), InvalidArgument);
}

// ------------------------------------------------------------ observations

TrafficState twelve_on_north() {
  std::vector<Vehicle> vs;
  for (int k = 0; k < 12; ++k) vs.push_back(make_vehicle(k + 1, Approach::N, static_cast<Intent>(k % 3), 5.0 * k));
  return state_of(vs);
}

TEST(Observation, RsuOccludesBeyondVisibleDepth) {
  const auto s = twelve_on_north();
  const auto rsu = encode_observation(s, ObservationView::RsuTopView, 256, 8);
  EXPECT_EQ(rsu.approaches[0].queue_len, 8);
  EXPECT_FALSE(rsu.approaches[0].intents.has_value());
  const auto vue = encode_observation(s, ObservationView::VueMultiView, 256, 8);
  EXPECT_EQ(vue.approaches[0].queue_len, 12);
  EXPECT_EQ(*vue.approaches[0].intents, (std::array<int, 3>{4, 4, 4}));
}

TEST(Observation, BudgetIsRespectedAndTooSmallThrows) {
  const auto s = twelve_on_north();
  const auto minimal = minimal_message_size(s, ObservationView::VueMultiView, 8);
  for (int budget = static_cast<int>(minimal); budget < 200; budget += 7) {
    const auto m = encode_observation(s, ObservationView::VueMultiView, budget, 8);
    EXPECT_LE(m.serialize().size(), static_cast<std::size_t>(budget));
    EXPECT_GT(m.foreground_fraction, 0.0);
    EXPECT_LE(m.foreground_fraction, 1.0);
  }
  EXPECT_THROW(encode_observation(s, ObservationView::VueMultiView, static_cast<int>(minimal) - 1, 8),
               InsufficientBudget);
}

TEST(Observation, SerializedForm) {
  const auto m = encode_observation(twelve_on_north(), ObservationView::RsuTopView, 256, 8);
  EXPECT_EQ(m.serialize(), "view=rsu phase=1\nN q=8\nS q=0\nE q=0\nW q=0\n");
}

// -------------------------------------------------------------- invariants

TEST(Invariants, CrashFreeConservedAndBoundedEveryStep) {
  for (const std::string controller : {"rr", "greedy"}) {
    for (const auto view : {ObservationView::VueMultiView, ObservationView::RsuTopView}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        TrafficConfig cfg;
        cfg.controller = controller;
        cfg.view = view;
        auto c = make_controller(cfg);
        auto rng = stream(seed, "traffic");
        int checked = 0;
        const auto m = run_episode(cfg, *c, rng, [&](const TrafficState& s) {
          ++checked;
          ASSERT_GE(min_lane_spacing(s), cfg.headway_m - 1e-9);
          ASSERT_EQ(s.crossed + s.uncrossed(), s.spawned);
          for (const auto& v : s.vehicles) {
            ASSERT_GE(v.speed_mps, 0.0);
            ASSERT_LE(v.speed_mps, cfg.free_flow_speed_mps);
          }
        });
        EXPECT_EQ(checked, m.steps);
        EXPECT_LE(m.throughput, cfg.num_vehicles);
      }
    }
  }
}

TEST(Metrics, GreedyBeatsRoundRobinOnAverage) {
  double greedy = 0.0;
  double rr = 0.0;
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    for (const std::string name : {"rr", "greedy"}) {
      TrafficConfig cfg;
      cfg.controller = name;
      auto c = make_controller(cfg);
      auto rng = stream(seed, "traffic");
      (name == "rr" ? rr : greedy) += run_episode(cfg, *c, rng).avg_speed_mps;
    }
  }
  EXPECT_GT(greedy, rr);
}

}  // namespace
}  // namespace autocomm::traffic
