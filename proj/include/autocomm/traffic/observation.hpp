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
#include <optional>
#include <string>

#include "autocomm/traffic/sim.hpp"

namespace autocomm::traffic {

class InsufficientBudget : public Error {
 public:
  using Error::Error;
};

struct ApproachObservation {
  int queue_len = 0;                          // foreground
  std::optional<double> head_wait_s;          // background
  std::optional<std::array<int, 3>> intents;  // background; Left, Straight, Right
  friend bool operator==(const ApproachObservation&, const ApproachObservation&) = default;
};

struct ObservationMessage {
  ObservationView view = ObservationView::VueMultiView;
  Phase phase = Phase::NsStraightRight;
  std::array<ApproachObservation, kNumApproaches> approaches{};
  int byte_budget = 0;
  double foreground_fraction = 1.0;  // share of serialized bytes that are queue fields

  /// Line-oriented text form; never longer than byte_budget.
  std::string serialize() const;
  friend bool operator==(const ObservationMessage&, const ObservationMessage&) = default;
};

/// queue_len counts the vehicles of an approach that have not crossed the
/// stop line. The RSU top view reports at most visible_depth of them and
/// nothing else. Background fields are dropped (intents first, then head
/// waits, last approach first) until the message fits the budget.
ObservationMessage encode_observation(const TrafficState& state, ObservationView view,
                                      int byte_budget, int visible_depth);

/// Bytes of the header plus the four queue fields: the smallest message.
std::size_t minimal_message_size(const TrafficState& state, ObservationView view, int visible_depth);

}  // namespace autocomm::traffic
