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

// Prompt construction, reply parsing and corrective feedback for the
// scheduling optimization-by-prompting loop. Every sentence the loop emits is
// produced here; README.md lists them verbatim.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "autocomm/sched/allocation.hpp"

namespace autocomm::opro {

using sched::Allocation;
using sched::RobotId;
using sched::ValidationReport;

/// A scored allocation shown back to the engine.
struct Exemplar {
  Allocation allocation;
  double score = 0.0;
  std::vector<RobotId> qos_unmet;  // empty when feasible
};

// Line prefixes shared between the prompt writer and the mock engine's reader.
inline constexpr std::string_view kRbCountPrefix = "Number of RBs: ";
inline constexpr std::string_view kEligiblePrefix = "Eligible robots: ";
inline constexpr std::string_view kHistoryHeader = "Previous allocations and scores (best first):";
inline constexpr std::string_view kExplorePrefix = "Exploration level: ";
inline constexpr std::string_view kFeedbackPrefix = "Feedback on the previous answer: ";

/// Natural-language objective clause used in prompts.
std::string objective_statement(const ObjectiveSpec& objective);

/// Deterministic prompt: task statement, objective clause, SNR table (dB, two
/// decimals), R_min, exemplars (omitted when `history` is empty), diversity
/// hint and output-format instruction. `history` must be sorted best first.
std::string build_task_prompt(const SchedulingConfig& cfg, const sched::SnrMap& snr,
                              const ObjectiveSpec& objective, std::span<const Exemplar> history,
                              double explore, std::string_view feedback = {});

enum class ParseFailure { NoVector, NonIntegerToken };
std::string_view to_string(ParseFailure f);

/// Last bracketed vector in `response`; ids may be separated by spaces and/or
/// commas. Length and id checks are left to sched::validate.
std::variant<Allocation, ParseFailure> parse_allocation(std::string_view response);

/// "3", "3 and 7", "1, 3 and 7".
std::string format_id_list(std::span<const RobotId> ids);

/// Score rendering used in feedback and exemplars ("%.10g").
std::string format_score(double score);

/// Corrective feedback for a validated proposal. `score` is shown only for a
/// fully valid allocation.
std::string feedback_message(const ValidationReport& report, std::optional<double> score);
std::string feedback_message(ParseFailure failure);

}  // namespace autocomm::opro
