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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "autocomm/core/config.hpp"
#include "autocomm/radio/link.hpp"

namespace autocomm::sched {

using radio::RobotId;
using radio::SnrMap;

/// RB-owner vector: rb_owner[b] is the robot id served on RB b.
struct Allocation {
  std::vector<RobotId> rb_owner;

  /// Bracketed, space-separated ids: "[1 2 3]".
  std::string to_string() const;
  friend bool operator==(const Allocation&, const Allocation&) = default;
  friend auto operator<=>(const Allocation&, const Allocation&) = default;
};

enum class ViolationKind { UnknownRobot, EmptyBufferRobot, WrongLength, QosViolation, ExcessiveRbs };

std::string_view to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::vector<RobotId> robots;  // ascending, distinct
  int count = 0;                // WrongLength: entries given; ExcessiveRbs: RBs held
  int limit = 0;                // WrongLength: num_rbs;       ExcessiveRbs: cap
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  const Violation* find(ViolationKind k) const;
  /// No violation other than QoS: the allocation can be scored.
  bool scorable() const;
  int qos_violation_count() const;
};

/// Structural and QoS checks; never throws. Structural: length, unknown ids,
/// empty-buffer robots, per-robot RB cap. QoS (objectives with R_min, only
/// when the length is right): buffer-nonempty robots below R_min.
ValidationReport validate(const Allocation& alloc, const SnrMap& snr, const SchedulingConfig& cfg,
                          const ObjectiveSpec& objective);

/// Ranking used by every search in the project. Feasible allocations beat
/// QoS-infeasible ones regardless of score; among QoS-infeasible ones fewer
/// unsatisfied robots wins first. Unscorable allocations rank last.
struct Fitness {
  enum class Tier { Unscorable = 0, QosInfeasible = 1, Feasible = 2 };
  Tier tier = Tier::Unscorable;
  int qos_violations = 0;
  double score = 0.0;

  bool feasible() const { return tier == Tier::Feasible; }
  /// Strictly better; equal fitness is not better.
  bool better_than(const Fitness& o) const;
  friend bool operator==(const Fitness&, const Fitness&) = default;
};

Fitness make_fitness(const ValidationReport& report, std::optional<double> score);

/// Precomputed per-(robot, RB) Shannon rates for repeated scoring. Scores
/// it returns are bit-identical to evaluate().
class Evaluator {
 public:
  Evaluator(const SnrMap& snr, const SchedulingConfig& cfg, const ObjectiveSpec& objective);

  /// `rb_owner` must have num_rbs valid, buffer-nonempty ids.
  double score(std::span<const RobotId> rb_owner) const;
  /// Fitness of a length-correct vector of buffer-nonempty ids (the search
  /// space of every scheduler here); applies the RB cap and QoS checks.
  Fitness assess(std::span<const RobotId> rb_owner) const;

  const std::vector<RobotId>& eligible() const { return eligible_; }
  int num_rbs() const { return num_rbs_; }
  const ObjectiveSpec& objective() const { return objective_; }

 private:
  void rates(std::span<const RobotId> rb_owner, std::span<double> out) const;
  double objective_value(std::span<const double> rates) const;

  int num_robots_;
  int num_rbs_;
  int rb_cap_;
  ObjectiveSpec objective_;
  std::vector<double> table_;  // [robot_index * num_rbs + rb]
  std::vector<char> buffer_;
  std::vector<RobotId> eligible_;
};

/// Objective value. PF: sum over buffer-nonempty robots of log2(max(r, eps)).
/// QosSumRate: sum of QoS-clamped rates. QosPf: PF over clamped rates.
/// Throws InvalidArgument if the allocation is not scorable.
double evaluate(const Allocation& alloc, const SnrMap& snr, const SchedulingConfig& cfg,
                const ObjectiveSpec& objective);

}  // namespace autocomm::sched
