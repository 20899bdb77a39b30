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

#include "autocomm/app/runner.hpp"

#include <chrono>
#include <fstream>
#include <memory>
#include <sstream>

#include "autocomm/channel/dataset.hpp"
#include "autocomm/core/digest.hpp"
#include "autocomm/llm/chat_client.hpp"
#include "autocomm/opro/loop.hpp"
#include "autocomm/opro/mock_engine.hpp"
#include "autocomm/sched/baselines.hpp"
#include "autocomm/traffic/controllers.hpp"

#ifndef AUTOCOMM_VERSION
#define AUTOCOMM_VERSION "unknown"
#endif

namespace autocomm::app {

using json = nlohmann::json;

std::string artifact_version() { return AUTOCOMM_VERSION; }

const double* RunRecord::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics) {
    if (k == name) return &v;
  }
  return nullptr;
}

json RunRecord::to_json() const {
  json m = json::array();
  for (const auto& [k, v] : metrics) m.push_back({{"name", k}, {"value", v}});
  json j = {{"track", track},        {"seed", seed},
            {"config_digest", config_digest}, {"version", version},
            {"metrics", m},          {"wall_time_s", wall_time_s},
            {"config_path", config_path},     {"outputs", outputs},
            {"ok", ok}};
  if (!error.empty()) j["error"] = error;
  return j;
}

RunRecord RunRecord::from_json(const json& j) {
  RunRecord r;
  try {
    r.track = j.at("track").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.config_digest = j.value("config_digest", "");
    r.version = j.value("version", "");
    for (const auto& m : j.value("metrics", json::array())) {
      r.metrics.emplace_back(m.at("name").get<std::string>(), m.at("value").get<double>());
    }
    r.wall_time_s = j.value("wall_time_s", 0.0);
    r.config_path = j.value("config_path", "");
    r.outputs = j.value("outputs", std::vector<std::string>{});
    r.ok = j.value("ok", true);
    r.error = j.value("error", "");
  } catch (const json::exception& e) {
    throw Error(std::string("malformed run record: ") + e.what());
  }
  return r;
}

RunPaths RunPaths::of(const RunOptions& opt) {
  const auto base = [&](const char* suffix) { return opt.out_dir / (opt.stem + suffix); };
  return {base(".config.json"), base(".record.json"),     base(".schedule.json"),
          base(".transcript.jsonl"), base(".traffic.csv"), base(".channel.csv")};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& bytes) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + p.string());
  out << bytes;
  if (!out.flush()) throw Error("write failed for " + p.string());
}

namespace {

json report_json(const sched::ValidationReport& r) {
  json vs = json::array();
  for (const auto& v : r.violations) {
    vs.push_back({{"kind", sched::to_string(v.kind)}, {"robots", v.robots}, {"count", v.count},
                  {"limit", v.limit}});
  }
  return {{"ok", r.ok}, {"violations", vs}};
}

std::string_view tier_name(sched::Fitness::Tier t) {
  switch (t) {
    case sched::Fitness::Tier::Feasible: return "feasible";
    case sched::Fitness::Tier::QosInfeasible: return "qos_infeasible";
    case sched::Fitness::Tier::Unscorable: break;
  }
  return "none";
}

// Outcome of one scheduling segment.
struct Segment {
  ObjectiveSpec objective;
  std::optional<sched::Allocation> allocation;
  double score = 0.0;
  sched::Fitness fitness;
  sched::ValidationReport report;
  int iterations = 0;  // OPRO only
  bool success = false;

  json to_json() const {
    json j = {{"objective", autocomm::to_json(objective)},
              {"fitness", tier_name(fitness.tier)},
              {"report", report_json(report)},
              {"success", success}};
    if (allocation) {
      j["allocation"] = allocation->rb_owner;
      j["allocation_text"] = allocation->to_string();
      j["score"] = score;
    }
    if (iterations > 0) j["iterations"] = iterations;
    return j;
  }
};

Segment assess(const sched::Allocation& a, const sched::SnrMap& snr, const SchedulingConfig& cfg,
               const ObjectiveSpec& objective) {
  Segment s;
  s.objective = objective;
  s.allocation = a;
  s.report = sched::validate(a, snr, cfg, objective);
  std::optional<double> score;
  if (s.report.scorable()) score = sched::evaluate(a, snr, cfg, objective);
  s.fitness = sched::make_fitness(s.report, score);
  s.score = score.value_or(0.0);
  s.success = s.report.ok;
  return s;
}

Segment from_opro(const opro::OproResult& r, const ObjectiveSpec& objective) {
  Segment s;
  s.objective = objective;
  s.allocation = r.best;
  s.score = r.score;
  s.fitness = r.fitness;
  s.report = r.report;
  s.iterations = r.iterations;
  s.success = r.success;
  return s;
}

std::shared_ptr<opro::ProposalEngine> make_engine(const std::string& spec) {
  if (spec == "mock") return opro::mock_local_search_engine();
  return std::make_shared<llm::ChatEngine>(llm::make_chat_client(spec));
}

Segment solve(const std::string& method, const SchedulingConfig& cfg, const sched::SnrMap& snr,
              const ObjectiveSpec& objective, RngStream& rng) {
  if (method == "rr") return assess(sched::round_robin_alloc(cfg, snr), snr, cfg, objective);
  if (method == "ga") {
    auto ga_rng = rng.derive("ga");
    return assess(sched::ga_schedule(cfg, snr, objective, cfg.ga, ga_rng).allocation, snr, cfg,
                  objective);
  }
  if (method == "oracle") {
    return assess(sched::brute_force_optimal(cfg, snr, objective).allocation, snr, cfg, objective);
  }
  throw InvalidArgument("unknown scheduling method '" + method + "'");
}

void add_segment_metrics(RunRecord& rec, const Segment& s, const std::string& suffix) {
  if (s.allocation && s.fitness.tier != sched::Fitness::Tier::Unscorable) {
    rec.metrics.emplace_back("score" + suffix, s.score);
  }
  rec.metrics.emplace_back("feasible" + suffix, s.fitness.feasible() ? 1.0 : 0.0);
  rec.metrics.emplace_back("qos_violations" + suffix, s.report.qos_violation_count());
  if (s.iterations > 0) rec.metrics.emplace_back("iterations" + suffix, s.iterations);
}

void run_scheduling(const ScenarioConfig& sc, const RunPaths& paths, RunRecord& rec) {
  const SchedulingConfig& cfg = *sc.scheduling;
  auto snr_rng = stream(sc.seed, "snr");
  const auto snr = radio::generate_snr_map(cfg, cfg.radio, snr_rng);
  auto rng = stream(sc.seed, "schedule");

  std::vector<Segment> segments;
  if (cfg.method == "opro") {
    auto engine = make_engine(cfg.engine);
    auto opro_rng = rng.derive("opro");
    opro::OproTranscript transcript;
    if (cfg.task_switch) {
      auto r = opro::opro_task_switch(*engine, cfg, snr, cfg.objective, cfg.task_switch->objective2,
                                      cfg.task_switch->at_iteration, cfg.opro, opro_rng);
      segments.push_back(from_opro(r.before, cfg.objective));
      segments.push_back(from_opro(r.after, cfg.task_switch->objective2));
      transcript = std::move(r.transcript);
      for (const auto* part : {&r.before, &r.after}) {
        if (part->aborted) throw Error("engine failure: " + part->error);
      }
    } else {
      auto r = opro::opro_optimize(*engine, cfg, snr, cfg.objective, cfg.opro, opro_rng, transcript);
      if (r.aborted) throw Error("engine failure: " + r.error);
      segments.push_back(from_opro(r, cfg.objective));
    }
    write_file(paths.transcript, transcript.to_jsonl());
    rec.outputs.push_back(paths.transcript.string());
  } else {
    segments.push_back(solve(cfg.method, cfg, snr, cfg.objective, rng));
    if (cfg.task_switch) {
      auto second = rng.derive("after_switch");
      segments.push_back(solve(cfg.method, cfg, snr, cfg.task_switch->objective2, second));
    }
  }

  json out = {{"method", cfg.method}, {"seed", sc.seed}};
  if (segments.size() == 1) {
    out.update(segments[0].to_json());
    add_segment_metrics(rec, segments[0], "");
  } else {
    out["segments"] = json::array({segments[0].to_json(), segments[1].to_json()});
    out["switch_at"] = cfg.task_switch->at_iteration;
    add_segment_metrics(rec, segments[0], "_before");
    add_segment_metrics(rec, segments[1], "_after");
  }
  write_file(paths.schedule, out.dump(2) + "\n");
  rec.outputs.push_back(paths.schedule.string());
}

void run_traffic(const ScenarioConfig& sc, const RunPaths& paths, RunRecord& rec) {
  const TrafficConfig& cfg = *sc.traffic;
  auto controller = traffic::make_controller(cfg);
  auto rng = stream(sc.seed, "traffic");
  const auto m = traffic::run_episode(cfg, *controller, rng);
  std::ostringstream csv;
  csv << "seed,controller,view,vehicles,avg_speed_mps,throughput,mean_wait_s,steps,phase_changes\n"
      << sc.seed << ',' << cfg.controller << ',' << to_string(cfg.view) << ',' << cfg.num_vehicles << ','
      << exact_double(m.avg_speed_mps) << ',' << m.throughput << ',' << exact_double(m.mean_wait_s)
      << ',' << m.steps << ',' << m.phase_changes << '\n';
  write_file(paths.traffic, csv.str());
  rec.outputs.push_back(paths.traffic.string());
  rec.metrics = {{"avg_speed_mps", m.avg_speed_mps},
                 {"throughput", m.throughput},
                 {"mean_wait_s", m.mean_wait_s},
                 {"phase_changes", m.phase_changes}};
}

void run_channel(const ScenarioConfig& sc, const RunPaths& paths, RunRecord& rec) {
  const auto summaries = channel::evaluate_predictors(*sc.channel);
  std::ostringstream csv;
  csv << "predictor,samples,excluded,nmse_db,worst_db\n";
  for (const auto& s : summaries) {
    csv << s.predictor << ',' << s.samples << ',' << s.excluded << ',' << exact_double(s.nmse_db)
        << ',' << exact_double(s.worst_db) << '\n';
    rec.metrics.emplace_back("nmse_db_" + s.predictor, s.nmse_db);
  }
  write_file(paths.channel, csv.str());
  rec.outputs.push_back(paths.channel.string());
}

}  // namespace

RunRecord run(const ScenarioConfig& cfg, const RunOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const RunPaths paths = RunPaths::of(opt);
  RunRecord rec;
  rec.track = std::string(to_string(cfg.track));
  rec.seed = cfg.seed;
  rec.config_digest = config_digest(cfg);
  rec.version = artifact_version();
  rec.config_path = paths.config.string();
  try {
    write_file(paths.config, serialize(cfg));
    switch (cfg.track) {
      case Track::Scheduling: run_scheduling(cfg, paths, rec); break;
      case Track::Traffic: run_traffic(cfg, paths, rec); break;
      case Track::Channel: run_channel(cfg, paths, rec); break;
    }
  } catch (const std::exception& e) {
    throw RunError(rec.track + " run (seed " + std::to_string(cfg.seed) + ", config " +
                   rec.config_digest.substr(0, 12) + "): " + e.what());
  }
  rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_file(paths.record, rec.to_json().dump(2) + "\n");
  return rec;
}

RunRecord rerun(const std::filesystem::path& config_path, const RunOptions& opt) {
  return run(build_scenario(std::string_view(read_file(config_path))), opt);
}

}  // namespace autocomm::app
