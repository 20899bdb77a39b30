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

// Uplink/downlink link budget for the robot-scheduling track: robot drop,
// per-RB SNR map, per-RB Shannon rates and QoS clamping.

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "autocomm/core/config.hpp"
#include "autocomm/core/rng.hpp"

namespace autocomm::radio {

/// Robots are numbered 1..num_robots everywhere an id is user visible.
using RobotId = int;

struct Position2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Position2&, const Position2&) = default;
};

/// Linear SNR per (robot, RB), row-major by robot. The common input every
/// scheduler consumes.
class SnrMap {
 public:
  SnrMap() = default;
  SnrMap(int num_robots, int num_rbs);

  int num_robots() const { return num_robots_; }
  int num_rbs() const { return num_rbs_; }

  /// Zero-based robot index, zero-based RB.
  double at(int robot_index, int rb) const { return values_[index(robot_index, rb)]; }
  double& at(int robot_index, int rb) { return values_[index(robot_index, rb)]; }
  /// One-based robot id.
  double snr(RobotId robot, int rb) const { return at(robot - 1, rb); }

  std::span<const double> row(int robot_index) const {
    return {values_.data() + static_cast<std::size_t>(robot_index) * num_rbs_,
            static_cast<std::size_t>(num_rbs_)};
  }

  bool has_buffer(RobotId robot) const { return buffer_nonempty[robot - 1] != 0; }
  bool valid_id(RobotId robot) const { return robot >= 1 && robot <= num_robots_; }

  /// Buffer-nonempty robot ids in ascending order.
  std::vector<RobotId> eligible() const;

  std::vector<Position2> robot_positions;
  std::vector<char> buffer_nonempty;  // 1 = data waiting

  friend bool operator==(const SnrMap&, const SnrMap&) = default;

 private:
  std::size_t index(int robot_index, int rb) const {
    return static_cast<std::size_t>(robot_index) * num_rbs_ + static_cast<std::size_t>(rb);
  }

  int num_robots_ = 0;
  int num_rbs_ = 0;
  std::vector<double> values_;
};

/// rates_bps[i] belongs to robot id i + 1.
struct RateVector {
  std::vector<double> rates_bps;
  friend bool operator==(const RateVector&, const RateVector&) = default;
};

/// pathloss_ref_db + 10 * exponent * log10(distance_m). Throws on distance <= 0.
double path_loss_db(double distance_m, const RadioParams& params);

double db_to_linear(double db);

/// Drops robots uniformly over the disk of cfg.cell_radius_m around the CU
/// and fills the SNR map from the link budget (plus i.i.d. Rayleigh power
/// fading per RB when enabled). Buffer status is Bernoulli(occupancy).
SnrMap generate_snr_map(const SchedulingConfig& cfg, const RadioParams& params, RngStream& rng);

/// SNR map for robots at the given positions (no randomness unless fading
/// is enabled). Buffers are all non-empty.
SnrMap snr_map_at(const SchedulingConfig& cfg, const RadioParams& params,
                  std::span<const Position2> positions, RngStream& rng);

/// Shannon rate of a single RB: (bandwidth / num_rbs) * log2(1 + snr).
double rb_rate_bps(double snr_linear, const SchedulingConfig& cfg);

/// Sum of per-RB Shannon rates over the RBs owned by `robot`; 0 for an empty
/// buffer. `rb_owner` holds one robot id per RB. Throws on an unknown id.
double robot_rate(std::span<const RobotId> rb_owner, const SnrMap& snr,
                  const SchedulingConfig& cfg, RobotId robot);

/// Rates of every robot. Entries of `rb_owner` that are not valid ids are
/// skipped.
RateVector robot_rates(std::span<const RobotId> rb_owner, const SnrMap& snr,
                       const SchedulingConfig& cfg);

/// Rates below min_rate_bps become 0.
RateVector clamp_qos(const RateVector& rates, double min_rate_bps);

// CSV exchange format: header `robot,rb,snr_linear`, robot 1-based, rb
// 0-based, one line per entry in row-major order. Buffer status and
// positions are not part of the format; imported maps have all buffers
// non-empty and positions at the origin.
void write_snr_csv(std::ostream& out, const SnrMap& snr);
SnrMap read_snr_csv(std::istream& in);

}  // namespace autocomm::radio
