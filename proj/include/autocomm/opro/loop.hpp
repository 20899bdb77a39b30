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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "autocomm/opro/engine.hpp"
#include "autocomm/opro/prompt.hpp"
#include "autocomm/sched/allocation.hpp"

namespace autocomm::opro {

/// One loop iteration. `score` is set whenever the proposal parsed and was
/// structurally valid (QoS violations still get a score).
struct TranscriptEntry {
  int iteration = 0;  // global across segments
  int segment = 0;    // increments at each task switch
  std::string objective;
  double explore = 0.0;
  std::string prompt_digest;  // SHA-256 of the prompt text
  std::string raw_response;
  std::optional<Allocation> parsed;
  std::optional<ParseFailure> parse_failure;
  ValidationReport report;
  std::optional<double> score;
  std::string feedback;
  // Best-so-far of the current segment after this iteration.
  std::optional<double> best_score;
  sched::Fitness best_fitness;
  std::string error;  // engine failure; the loop stops after such an entry

  nlohmann::json to_json() const;
};

struct OproTranscript {
  std::vector<TranscriptEntry> entries;

  /// JSON-lines, one iteration per line.
  void write_jsonl(std::ostream& out) const;
  std::string to_jsonl() const;
};

struct OproResult {
  std::optional<Allocation> best;  // empty: no scorable proposal was ever made
  double score = 0.0;
  sched::Fitness fitness;
  ValidationReport report;  // of `best`
  bool success = false;     // best exists and its report is ok
  bool aborted = false;     // engine error
  std::string error;
  int iterations = 0;
};

/// Prompt -> propose -> parse -> validate -> evaluate -> feedback, repeated
/// until max_iterations, or until the best allocation is valid and
/// stop_patience iterations passed without improvement. Entries are appended
/// to `transcript` with the given segment number.
OproResult opro_optimize(ProposalEngine& engine, const SchedulingConfig& cfg,
                         const sched::SnrMap& snr, const ObjectiveSpec& objective,
                         const OproParams& params, RngStream& rng, OproTranscript& transcript,
                         int segment = 0);

struct TaskSwitchResult {
  OproResult before;
  OproResult after;
  OproTranscript transcript;
};

/// Runs `first` for at most `switch_at` iterations, then `second` for the
/// rest of max_iterations on the same engine instance. Only the prompt
/// changes at the switch.
TaskSwitchResult opro_task_switch(ProposalEngine& engine, const SchedulingConfig& cfg,
                                  const sched::SnrMap& snr, const ObjectiveSpec& first,
                                  const ObjectiveSpec& second, int switch_at,
                                  const OproParams& params, RngStream& rng);

}  // namespace autocomm::opro
