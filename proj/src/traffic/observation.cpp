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

#include "autocomm/traffic/observation.hpp"

#include <algorithm>

#include "autocomm/core/digest.hpp"

namespace autocomm::traffic {

namespace {

ObservationMessage full_message(const TrafficState& s, ObservationView view, int visible_depth) {
  ObservationMessage m;
  m.view = view;
  m.phase = s.phase;
  std::array<int, kNumApproaches> queue{};
  std::array<std::array<int, 3>, kNumApproaches> intents{};
  // Head of each lane: the uncrossed vehicle closest to the line.
  std::array<const Vehicle*, kNumLanes> head{};
  for (const auto& v : s.vehicles) {
    if (v.crossed) continue;
    const auto a = static_cast<std::size_t>(v.approach);
    ++queue[a];
    ++intents[a][static_cast<std::size_t>(v.intent)];
    auto& h = head[static_cast<std::size_t>(v.lane())];
    if (!h || v.pos_m < h->pos_m) h = &v;
  }
  for (std::size_t a = 0; a < kNumApproaches; ++a) {
    auto& obs = m.approaches[a];
    if (view == ObservationView::RsuTopView) {
      obs.queue_len = std::min(queue[a], visible_depth);
      continue;
    }
    obs.queue_len = queue[a];
    double wait = 0.0;
    for (std::size_t l = 0; l < kLanesPerApproach; ++l) {
      if (const auto* h = head[a * kLanesPerApproach + l]) wait = std::max(wait, h->wait_s);
    }
    obs.head_wait_s = wait;
    obs.intents = intents[a];
  }
  return m;
}

std::string serialize_unchecked(const ObservationMessage& m) {
  std::string out = "view=";
  out += m.view == ObservationView::VueMultiView ? "vue" : "rsu";
  out += " phase=" + std::to_string(phase_index(m.phase)) + "\n";
  for (std::size_t a = 0; a < kNumApproaches; ++a) {
    const auto& o = m.approaches[a];
    out += std::string(to_string(static_cast<Approach>(a))) + " q=" + std::to_string(o.queue_len);
    if (o.head_wait_s) out += " w=" + fixed(*o.head_wait_s, 1);
    if (o.intents) {
      out += " i=" + std::to_string((*o.intents)[0]) + "/" + std::to_string((*o.intents)[1]) + "/" +
             std::to_string((*o.intents)[2]);
    }
    out += "\n";
  }
  return out;
}

ObservationMessage foreground_only(ObservationMessage m) {
  for (auto& a : m.approaches) {
    a.head_wait_s.reset();
    a.intents.reset();
  }
  return m;
}

}  // namespace

std::string ObservationMessage::serialize() const { return serialize_unchecked(*this); }

std::size_t minimal_message_size(const TrafficState& state, ObservationView view, int visible_depth) {
  return serialize_unchecked(foreground_only(full_message(state, view, visible_depth))).size();
}

ObservationMessage encode_observation(const TrafficState& state, ObservationView view,
                                      int byte_budget, int visible_depth) {
  ObservationMessage m = full_message(state, view, visible_depth);
  m.byte_budget = byte_budget;
  const auto minimal = serialize_unchecked(foreground_only(m)).size();
  if (byte_budget < 0 || static_cast<std::size_t>(byte_budget) < minimal) {
    throw InsufficientBudget("observation needs at least " + std::to_string(minimal) +
                             " bytes, budget is " + std::to_string(byte_budget));
  }
  const auto budget = static_cast<std::size_t>(byte_budget);
  for (int a = kNumApproaches - 1; a >= 0 && serialize_unchecked(m).size() > budget; --a) {
    m.approaches[static_cast<std::size_t>(a)].intents.reset();
  }
  for (int a = kNumApproaches - 1; a >= 0 && serialize_unchecked(m).size() > budget; --a) {
    m.approaches[static_cast<std::size_t>(a)].head_wait_s.reset();
  }
  m.foreground_fraction =
      static_cast<double>(minimal) / static_cast<double>(serialize_unchecked(m).size());
  return m;
}

}  // namespace autocomm::traffic
