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

#include "autocomm/traffic/controllers.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "autocomm/core/digest.hpp"
#include "autocomm/llm/chat_client.hpp"

namespace autocomm::traffic {

RoundRobinController::RoundRobinController(double green_s, std::vector<Phase> cycle_order)
    : green_s_(green_s), order_(std::move(cycle_order)) {
  if (!(green_s_ > 0)) throw InvalidArgument("round-robin green_s must be positive");
  if (order_.empty()) throw InvalidArgument("round-robin cycle order is empty");
}

Phase RoundRobinController::decide(const ObservationMessage&, double time_s, RngStream&) {
  const auto slot = static_cast<std::size_t>(std::floor(time_s / green_s_ + 1e-9));
  return order_[slot % order_.size()];
}

std::array<double, 4> QueueGreedyController::phase_demand(const ObservationMessage& obs) {
  std::array<double, 4> d{};
  for (std::size_t a = 0; a < kNumApproaches; ++a) {
    const auto& o = obs.approaches[a];
    const bool ns = a == static_cast<std::size_t>(Approach::N) || a == static_cast<std::size_t>(Approach::S);
    const std::size_t through = ns ? 0 : 2;  // index of the straight+right phase
    if (o.intents) {
      d[through] += (*o.intents)[1] + (*o.intents)[2];
      d[through + 1] += (*o.intents)[0];
    } else {
      d[through] += o.queue_len;
      d[through + 1] += o.queue_len;
    }
  }
  return d;
}

Phase QueueGreedyController::decide(const ObservationMessage& obs, double, RngStream&) {
  const auto demand = phase_demand(obs);
  if (std::all_of(demand.begin(), demand.end(), [](double v) { return v == 0.0; })) return obs.phase;
  auto wait = [&](std::size_t p) {
    const std::size_t a0 = p < 2 ? 0 : 2;  // N,S or E,W
    double w = 0.0;
    for (std::size_t a = a0; a < a0 + 2; ++a) w = std::max(w, obs.approaches[a].head_wait_s.value_or(0.0));
    return w;
  };
  std::size_t best = 0;
  for (std::size_t p = 1; p < 4; ++p) {
    if (demand[p] > demand[best] || (demand[p] == demand[best] && wait(p) > wait(best))) best = p;
  }
  return kAllPhases[best];
}

EngineController::EngineController(std::shared_ptr<opro::ProposalEngine> engine, double min_green_s)
    : engine_(std::move(engine)), min_green_s_(min_green_s) {}

std::string EngineController::render_prompt(const ObservationMessage& obs) const {
  std::string p =
      "You control the traffic signal of a four-way intersection. Choose the phase that keeps "
      "vehicles moving fastest on average.\n"
      "Phases: 1 = NS straight and right, 2 = NS left, 3 = EW straight and right, 4 = EW left.\n";
  p += "Current phase: " + std::to_string(phase_index(obs.phase)) + "\n";
  p += "A phase must stay green for at least " + fixed(min_green_s_, 1) +
       " s; earlier change requests are ignored.\n";
  p += "Observation (q = vehicles waiting or approaching, w = longest head wait in s, "
       "i = left/straight/right counts):\n";
  p += obs.serialize();
  p += "Answer with 'phase k' where k is 1, 2, 3 or 4.\n";
  return p;
}

std::optional<int> EngineController::parse_phase(const std::string& reply) {
  std::string lower(reply);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  auto read_int = [](std::string_view s) -> std::optional<int> {
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == ':' || s[i] == '=' || s[i] == '\t')) ++i;
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), v);
    if (ec != std::errc{} || ptr == s.data() + i) return std::nullopt;
    return v;
  };
  std::optional<int> value;
  if (const auto at = lower.rfind("phase"); at != std::string::npos) {
    value = read_int(std::string_view(lower).substr(at + 5));
  } else {
    const auto first = lower.find_first_not_of(" \t\r\n");
    const auto last = lower.find_last_not_of(" \t\r\n.");
    if (first != std::string::npos && last != std::string::npos) {
      const std::string_view trimmed = std::string_view(lower).substr(first, last - first + 1);
      int v = 0;
      const auto [ptr, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), v);
      if (ec == std::errc{} && ptr == trimmed.data() + trimmed.size()) value = v;
    }
  }
  if (value && *value >= 1 && *value <= 4) return value;
  return std::nullopt;
}

Phase EngineController::decide(const ObservationMessage& obs, double time_s, RngStream& rng) {
  EngineEpoch epoch;
  epoch.time_s = time_s;
  epoch.phase = obs.phase;
  epoch.held = true;
  try {
    epoch.raw_response = engine_->propose(render_prompt(obs), rng);
    if (const auto idx = parse_phase(epoch.raw_response)) {
      epoch.phase = phase_from_index(*idx);
      epoch.held = false;
    }
  } catch (const opro::EngineError& e) {
    epoch.error = e.what();
  }
  log_.push_back(epoch);
  return epoch.phase;
}

std::unique_ptr<Controller> make_controller(const TrafficConfig& cfg) {
  if (cfg.controller == "rr") return std::make_unique<RoundRobinController>(cfg.rr_green_s);
  if (cfg.controller == "greedy") return std::make_unique<QueueGreedyController>();
  if (cfg.controller == "engine" || cfg.controller.starts_with("replay:")) {
    const auto spec = cfg.controller == "engine" ? std::string("chat") : cfg.controller;
    auto engine = std::make_shared<llm::ChatEngine>(llm::make_chat_client(spec));
    return std::make_unique<EngineController>(engine, cfg.min_green_s);
  }
  throw InvalidArgument("unknown traffic controller '" + cfg.controller + "'");
}

}  // namespace autocomm::traffic
