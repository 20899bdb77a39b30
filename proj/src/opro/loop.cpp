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

#include "autocomm/opro/loop.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "autocomm/core/digest.hpp"

namespace autocomm::opro {

using nlohmann::json;

namespace {

json report_json(const ValidationReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"kind", sched::to_string(v.kind)},
                          {"robots", v.robots},
                          {"count", v.count},
                          {"limit", v.limit}});
  }
  return {{"ok", r.ok}, {"violations", violations}};
}

std::string_view tier_name(sched::Fitness::Tier t) {
  switch (t) {
    case sched::Fitness::Tier::Feasible: return "feasible";
    case sched::Fitness::Tier::QosInfeasible: return "qos_infeasible";
    case sched::Fitness::Tier::Unscorable: return "none";
  }
  return "?";
}

struct Candidate {
  Exemplar exemplar;
  sched::Fitness fitness;
};

// Distinct scorable allocations, best first.
class History {
 public:
  void offer(const Allocation& a, const sched::Fitness& f, const ValidationReport& report) {
    if (f.tier == sched::Fitness::Tier::Unscorable) return;
    for (const auto& c : items_) {
      if (c.exemplar.allocation == a) return;
    }
    Candidate c{{a, f.score, {}}, f};
    if (const auto* v = report.find(sched::ViolationKind::QosViolation)) c.exemplar.qos_unmet = v->robots;
    const auto pos = std::find_if(items_.begin(), items_.end(), [&](const Candidate& o) {
      return f.better_than(o.fitness) ||
             (!o.fitness.better_than(f) && a.rb_owner < o.exemplar.allocation.rb_owner);
    });
    items_.insert(pos, std::move(c));
  }

  std::vector<Exemplar> top(int k) const {
    std::vector<Exemplar> out;
    for (int i = 0; i < k && i < static_cast<int>(items_.size()); ++i) out.push_back(items_[i].exemplar);
    return out;
  }

 private:
  std::vector<Candidate> items_;
};

}  // namespace

json TranscriptEntry::to_json() const {
  json j;
  j["iteration"] = iteration;
  j["segment"] = segment;
  j["objective"] = objective;
  j["explore"] = explore;
  j["prompt_digest"] = prompt_digest;
  j["raw_response"] = raw_response;
  j["parsed"] = parsed ? json(parsed->rb_owner) : json(nullptr);
  j["parse_failure"] = parse_failure ? json(to_string(*parse_failure)) : json(nullptr);
  j["report"] = report_json(report);
  j["score"] = score ? json(*score) : json(nullptr);
  j["feedback"] = feedback;
  j["best_score"] = best_score ? json(*best_score) : json(nullptr);
  j["best_tier"] = tier_name(best_fitness.tier);
  j["best_qos_violations"] = best_fitness.qos_violations;
  if (!error.empty()) j["error"] = error;
  return j;
}

void OproTranscript::write_jsonl(std::ostream& out) const {
  for (const auto& e : entries) out << e.to_json().dump() << '\n';
}

std::string OproTranscript::to_jsonl() const {
  std::ostringstream out;
  write_jsonl(out);
  return out.str();
}

OproResult opro_optimize(ProposalEngine& engine, const SchedulingConfig& cfg,
                         const sched::SnrMap& snr, const ObjectiveSpec& objective,
                         const OproParams& params, RngStream& rng, OproTranscript& transcript,
                         int segment) {
  OproResult result;
  History history;
  std::string feedback;
  int since_improvement = 0;

  for (int it = 0; it < params.max_iterations; ++it) {
    TranscriptEntry entry;
    entry.iteration = static_cast<int>(transcript.entries.size());
    entry.segment = segment;
    entry.objective = std::string(to_string(objective.kind));
    entry.explore = params.explore.at(it, params.max_iterations);

    const auto exemplars = history.top(params.history_window);
    const std::string prompt =
        build_task_prompt(cfg, snr, objective, exemplars, entry.explore, feedback);
    entry.prompt_digest = sha256_hex(prompt);

    try {
      entry.raw_response = engine.propose(prompt, rng);
    } catch (const EngineError& e) {
      entry.error = e.what();
      entry.best_score = result.best ? std::optional(result.score) : std::nullopt;
      entry.best_fitness = result.fitness;
      transcript.entries.push_back(std::move(entry));
      result.aborted = true;
      result.error = e.what();
      result.iterations = it + 1;
      break;
    }

    const auto parsed = parse_allocation(entry.raw_response);
    bool improved = false;
    if (const auto* failure = std::get_if<ParseFailure>(&parsed)) {
      entry.parse_failure = *failure;
      entry.feedback = feedback_message(*failure);
    } else {
      const auto& alloc = std::get<Allocation>(parsed);
      entry.parsed = alloc;
      entry.report = sched::validate(alloc, snr, cfg, objective);
      if (entry.report.scorable()) {
        entry.score = sched::Evaluator(snr, cfg, objective).score(alloc.rb_owner);
      }
      entry.feedback = feedback_message(entry.report, entry.score);
      const auto fitness = sched::make_fitness(entry.report, entry.score);
      history.offer(alloc, fitness, entry.report);
      if (fitness.tier != sched::Fitness::Tier::Unscorable &&
          (!result.best || fitness.better_than(result.fitness))) {
        result.best = alloc;
        result.score = fitness.score;
        result.fitness = fitness;
        result.report = entry.report;
        improved = true;
      }
    }
    feedback = entry.feedback;
    since_improvement = improved ? 0 : since_improvement + 1;

    entry.best_score = result.best ? std::optional(result.score) : std::nullopt;
    entry.best_fitness = result.fitness;
    transcript.entries.push_back(std::move(entry));
    result.iterations = it + 1;

    if (result.best && result.report.ok && since_improvement >= params.stop_patience) break;
  }

  result.success = result.best.has_value() && result.report.ok && !result.aborted;
  return result;
}

TaskSwitchResult opro_task_switch(ProposalEngine& engine, const SchedulingConfig& cfg,
                                  const sched::SnrMap& snr, const ObjectiveSpec& first,
                                  const ObjectiveSpec& second, int switch_at,
                                  const OproParams& params, RngStream& rng) {
  TaskSwitchResult out;
  OproParams p1 = params;
  p1.max_iterations = std::max(1, std::min(switch_at, params.max_iterations));
  out.before = opro_optimize(engine, cfg, snr, first, p1, rng, out.transcript, 0);
  if (out.before.aborted) return out;
  OproParams p2 = params;
  p2.max_iterations = std::max(1, params.max_iterations - p1.max_iterations);
  out.after = opro_optimize(engine, cfg, snr, second, p2, rng, out.transcript, 1);
  return out;
}

}  // namespace autocomm::opro
