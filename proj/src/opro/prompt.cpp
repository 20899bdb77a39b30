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

#include "autocomm/opro/prompt.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "autocomm/core/digest.hpp"

namespace autocomm::opro {

std::string format_score(double score) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", score);
  return buf;
}

std::string format_id_list(std::span<const RobotId> ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += (i + 1 == ids.size()) ? " and " : ", ";
    out += std::to_string(ids[i]);
  }
  return out;
}

std::string objective_statement(const ObjectiveSpec& objective) {
  const std::string rmin = format_score(objective.min_rate_bps);
  switch (objective.kind) {
    case ObjectiveKind::ProportionalFairness:
      return "Objective: maximize proportional fairness, the sum over robots with buffered data "
             "of log2 of each robot's rate in bit/s.";
    case ObjectiveKind::QosSumRate:
      return "Objective: first satisfy each robot's QoS requirement of at least " + rmin +
             " bit/s, then use the remaining RBs to maximize the sum-rate. A robot below the "
             "minimum rate counts as zero rate.";
    case ObjectiveKind::QosPf:
      return "Objective: set the rate of every robot below the minimum rate of " + rmin +
             " bit/s to zero and maximize proportional fairness (sum of log2 rates) for the rest.";
  }
  return {};
}

std::string build_task_prompt(const SchedulingConfig& cfg, const sched::SnrMap& snr,
                              const ObjectiveSpec& objective, std::span<const Exemplar> history,
                              double explore, std::string_view feedback) {
  std::string p;
  p += "You schedule the uplink/downlink resource blocks (RBs) of one cell serving " +
       std::to_string(snr.num_robots()) + " robots. Each RB is " +
       fixed(cfg.rb_bandwidth_hz() / 1e6, 4) +
       " MHz wide and carries (bandwidth) * log2(1 + SNR) bit/s for the robot it is assigned to.\n";
  p += objective_statement(objective) + "\n";
  if (objective.has_qos()) {
    p += "Minimum rate R_min: " + format_score(objective.min_rate_bps) + " bit/s\n";
  }
  p += std::string(kRbCountPrefix) + std::to_string(snr.num_rbs()) + "\n";

  std::string eligible;
  std::string empty;
  for (int i = 0; i < snr.num_robots(); ++i) {
    std::string& dst = snr.buffer_nonempty[i] ? eligible : empty;
    if (!dst.empty()) dst += ' ';
    dst += std::to_string(i + 1);
  }
  p += std::string(kEligiblePrefix) + eligible + "\n";
  if (!empty.empty()) p += "Robots with empty buffers (never schedule them): " + empty + "\n";
  if (cfg.max_rbs_per_robot > 0) {
    p += "At most " + std::to_string(cfg.max_rbs_per_robot) + " RBs per robot.\n";
  }

  p += "Per-RB SNR in dB (one row per robot, columns RB 0.." + std::to_string(snr.num_rbs() - 1) +
       "):\n";
  for (int i = 0; i < snr.num_robots(); ++i) {
    p += "robot " + std::to_string(i + 1) + ":";
    for (int b = 0; b < snr.num_rbs(); ++b) p += " " + fixed(10.0 * std::log10(snr.at(i, b)), 2);
    p += "\n";
  }

  if (!history.empty()) {
    p += std::string(kHistoryHeader) + "\n";
    for (const auto& e : history) {
      p += "- " + e.allocation.to_string() + " score " + format_score(e.score);
      if (!e.qos_unmet.empty()) p += " (QoS not met for robots " + format_id_list(e.qos_unmet) + ")";
      p += "\n";
    }
  }

  p += std::string(kExplorePrefix) + fixed(explore, 3) +
       " (1 = try very different allocations, 0 = refine the best allocation)\n";
  if (!feedback.empty()) p += std::string(kFeedbackPrefix) + std::string(feedback) + "\n";
  p += "Respond with a bracketed vector of " + std::to_string(snr.num_rbs()) +
       " robot ids, one id per RB in RB order.\n";
  return p;
}

std::string_view to_string(ParseFailure f) {
  return f == ParseFailure::NoVector ? "no_vector" : "non_integer_token";
}

std::variant<Allocation, ParseFailure> parse_allocation(std::string_view response) {
  const auto close = response.rfind(']');
  if (close == std::string_view::npos) return ParseFailure::NoVector;
  const auto open = response.rfind('[', close);
  if (open == std::string_view::npos) return ParseFailure::NoVector;

  Allocation out;
  const std::string_view body = response.substr(open + 1, close - open - 1);
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ' ' || c == ',' || c == '\t' || c == '\n' || c == '\r'; };
  while (i < body.size()) {
    while (i < body.size() && is_sep(body[i])) ++i;
    if (i >= body.size()) break;
    std::size_t j = i;
    while (j < body.size() && !is_sep(body[j])) ++j;
    const std::string_view token = body.substr(i, j - i);
    RobotId id = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), id);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      return ParseFailure::NonIntegerToken;
    }
    out.rb_owner.push_back(id);
    i = j;
  }
  if (out.rb_owner.empty()) return ParseFailure::NoVector;
  return out;
}

std::string feedback_message(const ValidationReport& report, std::optional<double> score) {
  using sched::ViolationKind;
  if (report.ok) {
    return score ? "Allocation achieved score " + format_score(*score) + "." : std::string{};
  }
  std::string out;
  auto add = [&out](const std::string& sentence) {
    if (!out.empty()) out += ' ';
    out += sentence;
  };
  if (const auto* v = report.find(ViolationKind::WrongLength)) {
    add("RB allocation vector has " + std::to_string(v->count) + " entries but there are " +
        std::to_string(v->limit) + " RBs.");
  }
  if (const auto* v = report.find(ViolationKind::UnknownRobot)) {
    add("RB allocation vector schedules robots " + format_id_list(v->robots) +
        " that are not part of this task.");
  }
  if (const auto* v = report.find(ViolationKind::EmptyBufferRobot)) {
    add("RB allocation vector schedules robots " + format_id_list(v->robots) +
        " whose buffers are empty.");
  }
  for (const auto& v : report.violations) {
    if (v.kind != ViolationKind::ExcessiveRbs) continue;
    add("RB allocation vector assigns " + std::to_string(v.count) + " RBs to robot " +
        std::to_string(v.robots.front()) + ", above the limit of " + std::to_string(v.limit) +
        ".");
  }
  if (const auto* v = report.find(ViolationKind::QosViolation)) {
    add("RB allocation vector violates the QoS requirement of robots " +
        format_id_list(v->robots) + ".");
  }
  return out;
}

std::string feedback_message(ParseFailure failure) {
  return failure == ParseFailure::NoVector
             ? "No bracketed vector of robot ids was found in the response."
             : "The bracketed vector contains a token that is not an integer robot id.";
}

}  // namespace autocomm::opro
