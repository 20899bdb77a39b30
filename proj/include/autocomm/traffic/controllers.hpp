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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "autocomm/opro/engine.hpp"
#include "autocomm/traffic/observation.hpp"

namespace autocomm::traffic {

class Controller {
 public:
  virtual ~Controller() = default;
  /// Requested phase for the next decision interval.
  virtual Phase decide(const ObservationMessage& obs, double time_s, RngStream& rng) = 0;
  virtual std::string name() const = 0;
};

/// Cycles phases 1-4 in order, each requested for green_s seconds.
class RoundRobinController final : public Controller {
 public:
  explicit RoundRobinController(double green_s, std::vector<Phase> cycle_order = {kAllPhases.begin(), kAllPhases.end()});
  Phase decide(const ObservationMessage& obs, double time_s, RngStream& rng) override;
  std::string name() const override { return "rr"; }

 private:
  double green_s_;
  std::vector<Phase> order_;
};

/// Requests the phase whose green movements hold the largest queue. Intent
/// counts split an approach's queue between its two phases when present;
/// otherwise both phases of an axis see the whole approach queue. Ties go to
/// the longer head wait, then to the lower phase number.
class QueueGreedyController final : public Controller {
 public:
  Phase decide(const ObservationMessage& obs, double time_s, RngStream& rng) override;
  std::string name() const override { return "greedy"; }

  static std::array<double, 4> phase_demand(const ObservationMessage& obs);
};

/// Always requests one phase.
class FixedPhaseController final : public Controller {
 public:
  explicit FixedPhaseController(Phase p) : phase_(p) {}
  Phase decide(const ObservationMessage&, double, RngStream&) override { return phase_; }
  std::string name() const override { return "fixed"; }

 private:
  Phase phase_;
};

struct EngineEpoch {
  double time_s = 0.0;
  std::string raw_response;
  Phase phase = Phase::NsStraightRight;
  bool held = false;  // parse failure, invalid index or engine error
  std::string error;
};

/// Renders the observation as a prompt, asks the engine, and parses a phase
/// index 1-4 from the reply. Anything unusable holds the current phase.
class EngineController final : public Controller {
 public:
  EngineController(std::shared_ptr<opro::ProposalEngine> engine, double min_green_s);
  Phase decide(const ObservationMessage& obs, double time_s, RngStream& rng) override;
  std::string name() const override { return "engine"; }

  const std::vector<EngineEpoch>& log() const { return log_; }

  std::string render_prompt(const ObservationMessage& obs) const;
  /// "phase 2", "Phase: 2" or a bare "2"; nullopt otherwise.
  static std::optional<int> parse_phase(const std::string& reply);

 private:
  std::shared_ptr<opro::ProposalEngine> engine_;
  double min_green_s_;
  std::vector<EngineEpoch> log_;
};

std::unique_ptr<Controller> make_controller(const TrafficConfig& cfg);

}  // namespace autocomm::traffic
