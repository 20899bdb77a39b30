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

#include "autocomm/radio/link.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "autocomm/core/error.hpp"

namespace autocomm::radio {

SnrMap::SnrMap(int num_robots, int num_rbs)
    : buffer_nonempty(static_cast<std::size_t>(num_robots), 1),
      num_robots_(num_robots),
      num_rbs_(num_rbs),
      values_(static_cast<std::size_t>(num_robots) * num_rbs, 1.0) {
  robot_positions.resize(static_cast<std::size_t>(num_robots));
}

std::vector<RobotId> SnrMap::eligible() const {
  std::vector<RobotId> ids;
  for (int i = 0; i < num_robots_; ++i) {
    if (buffer_nonempty[i]) ids.push_back(i + 1);
  }
  return ids;
}

double path_loss_db(double distance_m, const RadioParams& params) {
  if (!(distance_m > 0.0)) throw InvalidArgument("path_loss_db: distance must be positive");
  return params.pathloss_ref_db + 10.0 * params.pathloss_exponent * std::log10(distance_m);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

SnrMap snr_map_at(const SchedulingConfig& cfg, const RadioParams& params,
                  std::span<const Position2> positions, RngStream& rng) {
  SnrMap map(static_cast<int>(positions.size()), cfg.num_rbs);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const auto [x, y] = positions[i];
    map.robot_positions[i] = positions[i];
    const double d = std::max(std::hypot(x, y), params.min_distance_m);
    const double mean_snr =
        db_to_linear(params.tx_power_dbm - path_loss_db(d, params) - params.noise_dbm_per_rb);
    for (int b = 0; b < cfg.num_rbs; ++b) {
      double fade = 1.0;
      if (params.fading == Fading::Rayleigh) {
        // Exponential power gain with unit mean; 1 - u keeps the log finite.
        fade = -std::log(1.0 - rng.uniform());
        if (fade <= 0.0) fade = std::numeric_limits<double>::min();
      }
      map.at(static_cast<int>(i), b) = mean_snr * fade;
    }
  }
  return map;
}

SnrMap generate_snr_map(const SchedulingConfig& cfg, const RadioParams& params, RngStream& rng) {
  std::vector<Position2> positions(static_cast<std::size_t>(cfg.num_robots));
  for (auto& p : positions) {
    const double r = cfg.cell_radius_m * std::sqrt(rng.uniform());
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    p = {r * std::cos(theta), r * std::sin(theta)};
  }
  SnrMap map = snr_map_at(cfg, params, positions, rng);
  for (auto& b : map.buffer_nonempty) b = rng.bernoulli(cfg.buffer_occupancy_prob) ? 1 : 0;
  return map;
}

double rb_rate_bps(double snr_linear, const SchedulingConfig& cfg) {
  return cfg.rb_bandwidth_hz() * std::log2(1.0 + snr_linear);
}

double robot_rate(std::span<const RobotId> rb_owner, const SnrMap& snr,
                  const SchedulingConfig& cfg, RobotId robot) {
  if (!snr.valid_id(robot)) {
    throw InvalidArgument("robot_rate: unknown robot id " + std::to_string(robot));
  }
  if (!snr.has_buffer(robot)) return 0.0;
  double rate = 0.0;
  const int n = std::min<int>(static_cast<int>(rb_owner.size()), snr.num_rbs());
  for (int b = 0; b < n; ++b) {
    if (rb_owner[b] == robot) rate += rb_rate_bps(snr.snr(robot, b), cfg);
  }
  return rate;
}

RateVector robot_rates(std::span<const RobotId> rb_owner, const SnrMap& snr,
                       const SchedulingConfig& cfg) {
  RateVector out{std::vector<double>(static_cast<std::size_t>(snr.num_robots()), 0.0)};
  const int n = std::min<int>(static_cast<int>(rb_owner.size()), snr.num_rbs());
  for (int b = 0; b < n; ++b) {
    const RobotId r = rb_owner[b];
    if (!snr.valid_id(r) || !snr.has_buffer(r)) continue;
    out.rates_bps[r - 1] += rb_rate_bps(snr.snr(r, b), cfg);
  }
  return out;
}

RateVector clamp_qos(const RateVector& rates, double min_rate_bps) {
  RateVector out = rates;
  for (auto& r : out.rates_bps) {
    if (r < min_rate_bps) r = 0.0;
  }
  return out;
}

}  // namespace autocomm::radio
