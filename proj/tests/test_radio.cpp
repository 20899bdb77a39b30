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

#include <cmath>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "autocomm/core/error.hpp"
#include "autocomm/radio/link.hpp"

namespace autocomm::radio {
namespace {

TEST(PathLoss, ReferenceDistance) {
  RadioParams p;
  EXPECT_DOUBLE_EQ(path_loss_db(1.0, p), p.pathloss_ref_db);
}

TEST(PathLoss, ClosedFormAt10And100m) {
  RadioParams p;
  p.pathloss_ref_db = 40.0;
  p.pathloss_exponent = 3.0;
  EXPECT_DOUBLE_EQ(path_loss_db(10.0, p), 70.0);
  EXPECT_DOUBLE_EQ(path_loss_db(100.0, p), 100.0);
}

TEST(PathLoss, NonPositiveDistanceThrows) {
  EXPECT_THROW(path_loss_db(0.0, RadioParams{}), InvalidArgument);
  EXPECT_THROW(path_loss_db(-1.0, RadioParams{}), InvalidArgument);
}

TEST(SnrMap, ShapeAndPositionsInsideRadius) {
  SchedulingConfig cfg;
  cfg.num_robots = 10;
  cfg.num_rbs = 9;
  auto rng = stream(1, "snr");
  const auto m = generate_snr_map(cfg, cfg.radio, rng);
  EXPECT_EQ(m.num_robots(), 10);
  EXPECT_EQ(m.num_rbs(), 9);
  ASSERT_EQ(m.robot_positions.size(), 10u);
  for (const auto& p : m.robot_positions) EXPECT_LE(std::hypot(p.x, p.y), cfg.cell_radius_m);
  for (int r = 0; r < 10; ++r) {
    for (int b = 0; b < 9; ++b) {
      EXPECT_GT(m.at(r, b), 0.0);
      EXPECT_TRUE(std::isfinite(m.at(r, b)));
    }
  }
}

TEST(SnrMap, EqualDistanceWithoutFadingGivesConstantRows) {
  SchedulingConfig cfg;
  cfg.num_rbs = 9;
  const std::vector<Position2> pos{{30, 40}, {-50, 0}, {0, 50}};
  auto rng = stream(2, "snr");
  const auto m = snr_map_at(cfg, cfg.radio, pos, rng);
  for (int r = 0; r < 3; ++r) {
    for (int b = 0; b < 9; ++b) EXPECT_EQ(m.at(r, b), m.at(0, 0));
  }
}

TEST(SnrMap, LinkBudgetValue) {
  SchedulingConfig cfg;
  const std::vector<Position2> pos{{10, 0}};
  auto rng = stream(0, "x");
  const auto m = snr_map_at(cfg, cfg.radio, pos, rng);
  // 23 dBm - 70 dB + 101 dB = 54 dB.
  EXPECT_NEAR(10.0 * std::log10(m.at(0, 0)), 54.0, 1e-9);
}

TEST(SnrMap, SeedDeterminism) {
  SchedulingConfig cfg;
  cfg.radio.fading = Fading::Rayleigh;
  auto a = stream(5, "snr");
  auto b = stream(5, "snr");
  EXPECT_EQ(generate_snr_map(cfg, cfg.radio, a), generate_snr_map(cfg, cfg.radio, b));
}

TEST(SnrMap, RayleighPowerHasUnitMean) {
  SchedulingConfig cfg;
  cfg.num_rbs = 2000;
  cfg.radio.fading = Fading::Rayleigh;
  const std::vector<Position2> pos{{10, 0}};
  auto none = stream(0, "x");
  RadioParams flat = cfg.radio;
  flat.fading = Fading::None;
  const double mean_snr = snr_map_at(cfg, flat, pos, none).at(0, 0);
  auto rng = stream(6, "fade");
  const auto m = snr_map_at(cfg, cfg.radio, pos, rng);
  double sum = 0.0;
  for (int b = 0; b < cfg.num_rbs; ++b) sum += m.at(0, b) / mean_snr;
  EXPECT_NEAR(sum / cfg.num_rbs, 1.0, 0.12);  // 5 sigma of an Exp(1) mean over 2000
}

TEST(SnrMap, OccupancyExtremes) {
  SchedulingConfig cfg;
  cfg.num_robots = 20;
  cfg.buffer_occupancy_prob = 0.0;
  auto a = stream(1, "snr");
  EXPECT_TRUE(generate_snr_map(cfg, cfg.radio, a).eligible().empty());
  cfg.buffer_occupancy_prob = 1.0;
  auto b = stream(1, "snr");
  EXPECT_EQ(generate_snr_map(cfg, cfg.radio, b).eligible().size(), 20u);
}

TEST(RobotRate, OneRbAtSnr3) {
  SchedulingConfig cfg;
  cfg.bandwidth_hz = 20e6;
  cfg.num_rbs = 9;
  SnrMap snr(2, 9);
  snr.at(0, 4) = 3.0;
  std::vector<RobotId> owner(9, 2);
  owner[4] = 1;
  const double r = robot_rate(owner, snr, cfg, 1);
  EXPECT_DOUBLE_EQ(r, 20e6 / 9 * 2.0);
  EXPECT_NEAR(r, 4444444.4444444, 1e-6);
}

TEST(RobotRate, EmptyBufferIsZero) {
  SchedulingConfig cfg;
  SnrMap snr(2, 9);
  snr.buffer_nonempty[0] = 0;
  std::vector<RobotId> owner{1, 1, 1, 2, 2, 2, 2, 2, 2};
  EXPECT_EQ(robot_rate(owner, snr, cfg, 1), 0.0);
}

TEST(RobotRate, NoRbIsZero) {
  SchedulingConfig cfg;
  SnrMap snr(2, 9);
  std::vector<RobotId> owner(9, 2);
  EXPECT_EQ(robot_rate(owner, snr, cfg, 1), 0.0);
}

TEST(RobotRate, UnknownIdThrows) {
  SchedulingConfig cfg;
  SnrMap snr(2, 9);
  std::vector<RobotId> owner(9, 1);
  EXPECT_THROW(robot_rate(owner, snr, cfg, 3), InvalidArgument);
}

TEST(RobotRate, AddingAnRbNeverDecreasesRate) {
  SchedulingConfig cfg;
  auto rng = stream(8, "mono");
  cfg.num_robots = 3;
  const auto snr = generate_snr_map(cfg, cfg.radio, rng);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RobotId> owner(9);
    for (auto& o : owner) o = 1 + static_cast<int>(rng.below(3));
    const int b = static_cast<int>(rng.below(9));
    const RobotId who = 1 + static_cast<int>(rng.below(3));
    const double before = snr.has_buffer(who) ? robot_rate(owner, snr, cfg, who) : 0.0;
    owner[static_cast<std::size_t>(b)] = who;
    EXPECT_GE(robot_rate(owner, snr, cfg, who), before);
  }
}

TEST(RobotRate, SumOverRobotsEqualsSumOverRbsExactly) {
  // Per-RB bandwidth 1 MHz and SNRs of the form 2^k - 1 make every rate an
  // integer number of bit/s, so both summation orders are exact.
  SchedulingConfig cfg;
  cfg.num_rbs = 9;
  cfg.bandwidth_hz = 9e6;
  SnrMap snr(3, 9);
  auto rng = stream(9, "exact");
  for (int r = 0; r < 3; ++r) {
    for (int b = 0; b < 9; ++b) snr.at(r, b) = std::exp2(static_cast<double>(1 + rng.below(20))) - 1.0;
  }
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<RobotId> owner(9);
    for (auto& o : owner) o = 1 + static_cast<int>(rng.below(3));
    double by_robot = 0.0;
    for (const double r : robot_rates(owner, snr, cfg).rates_bps) by_robot += r;
    double by_rb = 0.0;
    for (int b = 0; b < 9; ++b) by_rb += rb_rate_bps(snr.snr(owner[static_cast<std::size_t>(b)], b), cfg);
    EXPECT_EQ(by_robot, by_rb);
  }
}

TEST(ClampQos, ZeroesSubThresholdEntries) {
  const RateVector in{{5e6, 0.5e6, 3e6}};
  EXPECT_EQ(clamp_qos(in, 1e6).rates_bps, (std::vector<double>{5e6, 0.0, 3e6}));
}

TEST(ClampQos, IdentityCases) {
  const RateVector in{{5e6, 2e6, 3e6}};
  EXPECT_EQ(clamp_qos(in, 1e6), in);
  const RateVector low{{5.0, 0.0, 3.0}};
  EXPECT_EQ(clamp_qos(low, 0.0), low);
}

TEST(ClampQos, Idempotent) {
  auto rng = stream(10, "clamp");
  for (int trial = 0; trial < 200; ++trial) {
    RateVector v;
    for (int i = 0; i < 8; ++i) v.rates_bps.push_back(rng.uniform(0.0, 1e7));
    const double t = rng.uniform(0.0, 1e7);
    EXPECT_EQ(clamp_qos(clamp_qos(v, t), t), clamp_qos(v, t));
  }
}

TEST(SnrCsv, RoundTripAndHeader) {
  SchedulingConfig cfg;
  cfg.num_robots = 4;
  auto rng = stream(3, "csv");
  const auto m = generate_snr_map(cfg, cfg.radio, rng);
  std::stringstream ss;
  write_snr_csv(ss, m);
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "robot,rb,snr_linear");
  const auto back = read_snr_csv(ss);
  ASSERT_EQ(back.num_robots(), 4);
  ASSERT_EQ(back.num_rbs(), 9);
  for (int r = 0; r < 4; ++r) {
    for (int b = 0; b < 9; ++b) EXPECT_EQ(back.at(r, b), m.at(r, b));
  }
}

TEST(SnrCsv, MalformedInputThrows) {
  std::stringstream bad("robot,rb,snr_linear\n1,0,abc\n");
  EXPECT_THROW(read_snr_csv(bad), Error);
}

}  // namespace
}  // namespace autocomm::radio
