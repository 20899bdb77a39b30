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

#include "autocomm/core/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "autocomm/core/digest.hpp"
#include "autocomm/core/error.hpp"

namespace autocomm {

using nlohmann::json;

double ExploreSchedule::at(int iteration, int max_iterations) const {
  if (kind == Kind::Constant) return start;
  const double span = decay_fraction * max_iterations;
  if (span <= 0.0) return 0.0;
  const double frac = static_cast<double>(iteration) / span;
  return frac >= 1.0 ? 0.0 : start * (1.0 - frac);
}

std::vector<Vec3> GridSpec::points() const {
  std::vector<Vec3> out;
  const auto nx = static_cast<long>(std::floor((x_max - x_min) / spacing_m + 1e-9)) + 1;
  const auto ny = static_cast<long>(std::floor((y_max - y_min) / spacing_m + 1e-9)) + 1;
  out.reserve(static_cast<std::size_t>(nx * ny));
  for (long iy = 0; iy < ny; ++iy) {
    for (long ix = 0; ix < nx; ++ix) {
      out.push_back({x_min + static_cast<double>(ix) * spacing_m,
                     y_min + static_cast<double>(iy) * spacing_m, user_z});
    }
  }
  return out;
}

// ------------------------------------------------------------- enum names

std::string_view to_string(Track t) {
  switch (t) {
    case Track::Scheduling: return "scheduling";
    case Track::Channel: return "channel";
    case Track::Traffic: return "traffic";
  }
  return "?";
}

std::string_view to_string(ObjectiveKind k) {
  switch (k) {
    case ObjectiveKind::ProportionalFairness: return "pf";
    case ObjectiveKind::QosSumRate: return "qos_sum_rate";
    case ObjectiveKind::QosPf: return "qos_pf";
  }
  return "?";
}

std::string_view to_string(ObservationView v) {
  return v == ObservationView::VueMultiView ? "vue" : "rsu";
}

ObjectiveKind parse_objective_kind(std::string_view name) {
  if (name == "pf") return ObjectiveKind::ProportionalFairness;
  if (name == "qos_sum_rate") return ObjectiveKind::QosSumRate;
  if (name == "qos_pf") return ObjectiveKind::QosPf;
  throw ConfigError("objective.kind", "unknown objective '" + std::string(name) +
                                          "' (expected pf, qos_sum_rate or qos_pf)");
}

ObservationView parse_view(std::string_view name) {
  if (name == "vue") return ObservationView::VueMultiView;
  if (name == "rsu") return ObservationView::RsuTopView;
  throw ConfigError("traffic.view", "unknown view '" + std::string(name) + "' (expected vue or rsu)");
}

namespace {

Track parse_track(const std::string& name) {
  if (name == "scheduling") return Track::Scheduling;
  if (name == "channel") return Track::Channel;
  if (name == "traffic") return Track::Traffic;
  throw ConfigError("track", "unknown track '" + name + "'");
}

// Reads optional members of one JSON object into pre-defaulted fields and
// rejects keys it was never asked about.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(field(key), "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) throw ConfigError(field(key), "must be finite");
    }
  }

  void integer(const std::string& key, int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) throw ConfigError(field(key), "expected an integer");
      const auto wide = v->get<std::int64_t>();
      if (wide < std::numeric_limits<int>::min() || wide > std::numeric_limits<int>::max()) {
        throw ConfigError(field(key), "integer out of range");
      }
      out = static_cast<int>(wide);
    }
  }

  void text(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ConfigError(field(key), "expected a string");
      out = v->get<std::string>();
    }
  }

  void finish() const {
    for (const auto& [key, _] : j_.items()) {
      if (!seen_.contains(key)) throw ConfigError(field(key), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

Vec3 vec3_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3 || !std::all_of(j.begin(), j.end(), [](const json& e) {
        return e.is_number();
      })) {
    throw ConfigError(path, "expected [x, y, z]");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json to_json(Vec3 v) { return json::array({v.x, v.y, v.z}); }

RadioParams radio_from_json(const json& j) {
  RadioParams p;
  ObjectReader r(j, "scheduling.radio");
  r.number("tx_power_dbm", p.tx_power_dbm);
  r.number("noise_dbm_per_rb", p.noise_dbm_per_rb);
  r.number("pathloss_ref_db", p.pathloss_ref_db);
  r.number("pathloss_exponent", p.pathloss_exponent);
  r.number("min_distance_m", p.min_distance_m);
  std::string fading = "none";
  r.text("fading", fading);
  if (fading == "none") {
    p.fading = Fading::None;
  } else if (fading == "rayleigh") {
    p.fading = Fading::Rayleigh;
  } else {
    throw ConfigError("scheduling.radio.fading", "expected none or rayleigh");
  }
  r.finish();
  return p;
}

GaParams ga_from_json(const json& j) {
  GaParams p;
  ObjectReader r(j, "scheduling.ga");
  r.integer("population", p.population);
  r.integer("tournament_size", p.tournament_size);
  r.number("crossover_prob", p.crossover_prob);
  r.number("mutation_prob", p.mutation_prob);
  r.integer("generations", p.generations);
  r.integer("elitism", p.elitism);
  r.finish();
  return p;
}

OproParams opro_from_json(const json& j) {
  OproParams p;
  ObjectReader r(j, "scheduling.opro");
  r.integer("max_iterations", p.max_iterations);
  r.integer("history_window", p.history_window);
  r.integer("stop_patience", p.stop_patience);
  if (const json* e = r.find("explore")) {
    ObjectReader er(*e, "scheduling.opro.explore");
    std::string kind = "linear_decay";
    er.text("kind", kind);
    if (kind == "linear_decay") {
      p.explore.kind = ExploreSchedule::Kind::LinearDecay;
    } else if (kind == "constant") {
      p.explore.kind = ExploreSchedule::Kind::Constant;
    } else {
      throw ConfigError("scheduling.opro.explore.kind", "expected linear_decay or constant");
    }
    er.number("start", p.explore.start);
    er.number("decay_fraction", p.explore.decay_fraction);
    er.finish();
  }
  r.finish();
  return p;
}

SchedulingConfig scheduling_from_json(const json& j) {
  SchedulingConfig c;
  ObjectReader r(j, "scheduling");
  r.integer("num_robots", c.num_robots);
  r.number("cell_radius_m", c.cell_radius_m);
  r.number("bandwidth_hz", c.bandwidth_hz);
  r.integer("num_rbs", c.num_rbs);
  r.number("min_rate_bps", c.min_rate_bps);
  r.number("buffer_occupancy_prob", c.buffer_occupancy_prob);
  r.integer("max_rbs_per_robot", c.max_rbs_per_robot);
  r.text("method", c.method);
  r.text("engine", c.engine);
  c.objective.min_rate_bps = c.min_rate_bps;
  if (const json* o = r.find("objective")) {
    c.objective = objective_from_json(*o, c.min_rate_bps, "scheduling.objective");
  }
  if (const json* v = r.find("radio")) c.radio = radio_from_json(*v);
  if (const json* v = r.find("ga")) c.ga = ga_from_json(*v);
  if (const json* v = r.find("opro")) c.opro = opro_from_json(*v);
  if (const json* v = r.find("task_switch"); v && !v->is_null()) {
    ObjectReader sr(*v, "scheduling.task_switch");
    TaskSwitch ts;
    sr.integer("at_iteration", ts.at_iteration);
    const json* o2 = sr.find("objective2");
    if (!o2) throw ConfigError("scheduling.task_switch.objective2", "required");
    ts.objective2 = objective_from_json(*o2, c.min_rate_bps, "scheduling.task_switch.objective2");
    sr.finish();
    c.task_switch = ts;
  }
  r.finish();
  return c;
}

ChannelSceneConfig channel_from_json(const json& j) {
  ChannelSceneConfig c;
  ObjectReader r(j, "channel");
  if (const json* b = r.find("buildings")) {
    if (!b->is_array()) throw ConfigError("channel.buildings", "expected an array");
    for (std::size_t i = 0; i < b->size(); ++i) {
      const std::string path = "channel.buildings[" + std::to_string(i) + "]";
      ObjectReader br((*b)[i], path);
      Building bd;
      br.number("x_min", bd.x_min);
      br.number("x_max", bd.x_max);
      br.number("y_min", bd.y_min);
      br.number("y_max", bd.y_max);
      br.number("height", bd.height);
      br.finish();
      c.buildings.push_back(bd);
    }
  }
  if (const json* v = r.find("bs_pos")) c.bs_pos = vec3_from_json(*v, "channel.bs_pos");
  r.number("carrier_hz", c.carrier_hz);
  r.integer("num_antennas", c.num_antennas);
  if (const json* v = r.find("reflection_coeff")) {
    if (v->is_number()) {
      c.reflection_coeff = {v->get<double>(), 0.0};
    } else if (v->is_array() && v->size() == 2 && (*v)[0].is_number() && (*v)[1].is_number()) {
      c.reflection_coeff = {(*v)[0].get<double>(), (*v)[1].get<double>()};
    } else {
      throw ConfigError("channel.reflection_coeff", "expected a number or [re, im]");
    }
  }
  if (const json* g = r.find("grid")) {
    ObjectReader gr(*g, "channel.grid");
    gr.number("x_min", c.grid.x_min);
    gr.number("x_max", c.grid.x_max);
    gr.number("y_min", c.grid.y_min);
    gr.number("y_max", c.grid.y_max);
    gr.number("spacing_m", c.grid.spacing_m);
    gr.number("user_z", c.grid.user_z);
    gr.finish();
  }
  r.number("training_spacing_m", c.training_spacing_m);
  if (const json* p = r.find("predictors")) {
    if (!p->is_array()) throw ConfigError("channel.predictors", "expected an array of names");
    c.predictors.clear();
    for (const auto& e : *p) {
      if (!e.is_string()) throw ConfigError("channel.predictors", "expected an array of names");
      c.predictors.push_back(e.get<std::string>());
    }
  }
  r.finish();
  return c;
}

TrafficConfig traffic_from_json(const json& j) {
  TrafficConfig c;
  ObjectReader r(j, "traffic");
  r.number("area_m", c.area_m);
  r.number("lane_width_total_m", c.lane_width_total_m);
  r.integer("num_vehicles", c.num_vehicles);
  r.number("free_flow_speed_mps", c.free_flow_speed_mps);
  r.number("headway_m", c.headway_m);
  r.number("decision_interval_s", c.decision_interval_s);
  r.number("min_green_s", c.min_green_s);
  r.number("episode_s", c.episode_s);
  r.number("dt_s", c.dt_s);
  r.number("startup_delay_s", c.startup_delay_s);
  r.number("saturation_headway_s", c.saturation_headway_s);
  r.number("spawn_range_m", c.spawn_range_m);
  r.integer("visible_depth", c.visible_depth);
  r.integer("byte_budget", c.byte_budget);
  r.text("controller", c.controller);
  r.number("rr_green_s", c.rr_green_s);
  std::string view = std::string(to_string(c.view));
  r.text("view", view);
  c.view = parse_view(view);
  r.finish();
  return c;
}

int line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

}  // namespace

// ---------------------------------------------------------------- objective

json to_json(const ObjectiveSpec& o) {
  return {{"kind", to_string(o.kind)}, {"min_rate_bps", o.min_rate_bps}, {"epsilon", o.epsilon}};
}

ObjectiveSpec objective_from_json(const json& j, double default_min_rate_bps,
                                  const std::string& path) {
  ObjectiveSpec o;
  o.min_rate_bps = default_min_rate_bps;
  if (j.is_string()) {
    o.kind = parse_objective_kind(j.get<std::string>());
    return o;
  }
  ObjectReader r(j, path);
  std::string kind = "pf";
  r.text("kind", kind);
  try {
    o.kind = parse_objective_kind(kind);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ".kind", e.what());
  }
  r.number("min_rate_bps", o.min_rate_bps);
  r.number("epsilon", o.epsilon);
  r.finish();
  require(o.epsilon > 0.0, path + ".epsilon", "must be > 0");
  require(o.min_rate_bps >= 0.0, path + ".min_rate_bps", "must be >= 0");
  return o;
}

// --------------------------------------------------------------- validation

void validate(const SchedulingConfig& c) {
  require(c.num_robots >= 1, "scheduling.num_robots", "must be >= 1");
  require(c.num_rbs >= 1, "scheduling.num_rbs", "must be >= 1");
  require(c.cell_radius_m > 0.0, "scheduling.cell_radius_m", "must be > 0");
  require(c.bandwidth_hz > 0.0, "scheduling.bandwidth_hz", "must be > 0");
  require(c.min_rate_bps >= 0.0, "scheduling.min_rate_bps", "must be >= 0");
  require(c.buffer_occupancy_prob >= 0.0 && c.buffer_occupancy_prob <= 1.0,
          "scheduling.buffer_occupancy_prob", "must be in [0, 1]");
  require(c.max_rbs_per_robot >= 0, "scheduling.max_rbs_per_robot", "must be >= 0");
  require(c.objective.epsilon > 0.0, "scheduling.objective.epsilon", "must be > 0");
  require(c.objective.min_rate_bps >= 0.0, "scheduling.objective.min_rate_bps", "must be >= 0");
  require(c.radio.pathloss_exponent >= 2.0, "scheduling.radio.pathloss_exponent", "must be >= 2");
  require(std::isfinite(c.radio.noise_dbm_per_rb), "scheduling.radio.noise_dbm_per_rb",
          "must be finite");
  require(c.radio.min_distance_m > 0.0, "scheduling.radio.min_distance_m", "must be > 0");
  require(c.method == "rr" || c.method == "ga" || c.method == "oracle" || c.method == "opro",
          "scheduling.method", "expected rr, ga, oracle or opro");
  require(c.engine == "mock" || c.engine == "chat" || c.engine.starts_with("replay:"),
          "scheduling.engine", "expected mock, chat or replay:<cassette>");
  require(c.ga.population >= 2, "scheduling.ga.population", "must be >= 2");
  require(c.ga.tournament_size >= 1, "scheduling.ga.tournament_size", "must be >= 1");
  require(c.ga.crossover_prob >= 0.0 && c.ga.crossover_prob <= 1.0, "scheduling.ga.crossover_prob",
          "must be in [0, 1]");
  require(c.ga.mutation_prob >= 0.0 && c.ga.mutation_prob <= 1.0, "scheduling.ga.mutation_prob",
          "must be in [0, 1]");
  require(c.ga.generations >= 0, "scheduling.ga.generations", "must be >= 0");
  require(c.ga.elitism >= 0 && c.ga.elitism <= c.ga.population, "scheduling.ga.elitism",
          "must be in [0, population]");
  require(c.opro.max_iterations >= 1, "scheduling.opro.max_iterations", "must be >= 1");
  require(c.opro.history_window >= 1, "scheduling.opro.history_window", "must be >= 1");
  require(c.opro.stop_patience >= 1, "scheduling.opro.stop_patience", "must be >= 1");
  require(c.opro.explore.start >= 0.0 && c.opro.explore.start <= 1.0,
          "scheduling.opro.explore.start", "must be in [0, 1]");
  if (c.task_switch) {
    require(c.task_switch->at_iteration >= 1, "scheduling.task_switch.at_iteration",
            "must be >= 1");
  }
}

void validate(const ChannelSceneConfig& c) {
  require(c.buildings.size() <= 4, "channel.buildings", "at most four buildings");
  auto inside = [](const Building& b, Vec3 p) {
    return p.x > b.x_min && p.x < b.x_max && p.y > b.y_min && p.y < b.y_max && p.z < b.height;
  };
  for (std::size_t i = 0; i < c.buildings.size(); ++i) {
    const auto& b = c.buildings[i];
    const std::string path = "channel.buildings[" + std::to_string(i) + "]";
    require(b.x_max > b.x_min && b.y_max > b.y_min && b.height > 0.0, path,
            "must have positive extent");
    for (std::size_t k = 0; k < i; ++k) {
      const auto& o = c.buildings[k];
      const bool overlap =
          b.x_min < o.x_max && o.x_min < b.x_max && b.y_min < o.y_max && o.y_min < b.y_max;
      require(!overlap, path, "overlaps building " + std::to_string(k));
    }
    require(!inside(b, c.bs_pos), "channel.bs_pos", "lies inside building " + std::to_string(i));
  }
  require(c.carrier_hz > 0.0, "channel.carrier_hz", "must be > 0");
  require(c.num_antennas >= 1, "channel.num_antennas", "must be >= 1");
  require(c.grid.spacing_m > 0.0, "channel.grid.spacing_m", "must be > 0");
  require(c.grid.x_max >= c.grid.x_min && c.grid.y_max >= c.grid.y_min, "channel.grid",
          "empty extent");
  require(c.training_spacing_m > 0.0, "channel.training_spacing_m", "must be > 0");
  for (const auto& p : c.predictors) {
    require(p == "geom" || p == "linear" || p == "nn", "channel.predictors",
            "unknown predictor '" + p + "'");
  }
}

void validate(const TrafficConfig& c) {
  require(c.num_vehicles >= 0, "traffic.num_vehicles", "must be >= 0");
  require(c.dt_s > 0.0, "traffic.dt_s", "must be > 0");
  require(c.free_flow_speed_mps > 0.0, "traffic.free_flow_speed_mps", "must be > 0");
  require(c.headway_m > 0.0, "traffic.headway_m", "must be > 0");
  require(c.decision_interval_s > 0.0, "traffic.decision_interval_s", "must be > 0");
  require(c.min_green_s >= 0.0, "traffic.min_green_s", "must be >= 0");
  require(c.episode_s > 0.0, "traffic.episode_s", "must be > 0");
  require(c.startup_delay_s >= 0.0, "traffic.startup_delay_s", "must be >= 0");
  require(c.saturation_headway_s >= 0.0, "traffic.saturation_headway_s", "must be >= 0");
  require(c.spawn_range_m >= 0.0, "traffic.spawn_range_m", "must be >= 0");
  require(c.visible_depth >= 0, "traffic.visible_depth", "must be >= 0");
  require(c.byte_budget >= 0, "traffic.byte_budget", "must be >= 0");
  require(c.rr_green_s > 0.0, "traffic.rr_green_s", "must be > 0");
  require(c.area_m > 0.0 && c.lane_width_total_m > 0.0, "traffic.area_m", "must be > 0");
  require(c.controller == "rr" || c.controller == "greedy" || c.controller == "engine" ||
              c.controller.starts_with("replay:"),
          "traffic.controller", "expected rr, greedy, engine or replay:<cassette>");
}

// ------------------------------------------------------------------- scenario

ScenarioConfig build_scenario(const json& doc) {
  ScenarioConfig cfg;
  ObjectReader r(doc, "");
  const json* track = r.find("track");
  if (!track) throw ConfigError("track", "required");
  if (!track->is_string()) throw ConfigError("track", "expected a string");
  cfg.track = parse_track(track->get<std::string>());

  const json* seed = r.find("seed");
  if (!seed) throw ConfigError("seed", "required");
  if (!seed->is_number_integer() || (seed->is_number_integer() && !seed->is_number_unsigned() &&
                                     seed->get<std::int64_t>() < 0)) {
    throw ConfigError("seed", "expected a non-negative integer");
  }
  cfg.seed = seed->get<std::uint64_t>();

  const json* sched = r.find("scheduling");
  const json* chan = r.find("channel");
  const json* traf = r.find("traffic");
  r.finish();

  auto present = [](const json* p) { return p != nullptr && !p->is_null(); };
  if (present(sched) && cfg.track != Track::Scheduling) {
    throw ConfigError("scheduling", "present but track is " + std::string(to_string(cfg.track)));
  }
  if (present(chan) && cfg.track != Track::Channel) {
    throw ConfigError("channel", "present but track is " + std::string(to_string(cfg.track)));
  }
  if (present(traf) && cfg.track != Track::Traffic) {
    throw ConfigError("traffic", "present but track is " + std::string(to_string(cfg.track)));
  }

  switch (cfg.track) {
    case Track::Scheduling:
      cfg.scheduling = present(sched) ? scheduling_from_json(*sched) : SchedulingConfig{};
      validate(*cfg.scheduling);
      break;
    case Track::Channel:
      cfg.channel = present(chan) ? channel_from_json(*chan) : ChannelSceneConfig{};
      validate(*cfg.channel);
      break;
    case Track::Traffic:
      cfg.traffic = present(traf) ? traffic_from_json(*traf) : TrafficConfig{};
      validate(*cfg.traffic);
      break;
  }
  return cfg;
}

ScenarioConfig build_scenario(std::string_view raw_config) {
  json doc;
  try {
    doc = json::parse(raw_config.begin(), raw_config.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("", e.what(), line_of(raw_config, e.byte == 0 ? 0 : e.byte - 1));
  }
  return build_scenario(doc);
}

json to_json(const ScenarioConfig& cfg) {
  json j;
  j["track"] = to_string(cfg.track);
  j["seed"] = cfg.seed;
  if (cfg.scheduling) {
    const auto& s = *cfg.scheduling;
    json radio = {{"tx_power_dbm", s.radio.tx_power_dbm},
                  {"noise_dbm_per_rb", s.radio.noise_dbm_per_rb},
                  {"pathloss_ref_db", s.radio.pathloss_ref_db},
                  {"pathloss_exponent", s.radio.pathloss_exponent},
                  {"min_distance_m", s.radio.min_distance_m},
                  {"fading", s.radio.fading == Fading::None ? "none" : "rayleigh"}};
    json ga = {{"population", s.ga.population},         {"tournament_size", s.ga.tournament_size},
               {"crossover_prob", s.ga.crossover_prob}, {"mutation_prob", s.ga.mutation_prob},
               {"generations", s.ga.generations},       {"elitism", s.ga.elitism}};
    json explore = {
        {"kind", s.opro.explore.kind == ExploreSchedule::Kind::LinearDecay ? "linear_decay"
                                                                            : "constant"},
        {"start", s.opro.explore.start},
        {"decay_fraction", s.opro.explore.decay_fraction}};
    json opro = {{"max_iterations", s.opro.max_iterations},
                 {"history_window", s.opro.history_window},
                 {"stop_patience", s.opro.stop_patience},
                 {"explore", explore}};
    json sj = {{"num_robots", s.num_robots},
               {"cell_radius_m", s.cell_radius_m},
               {"bandwidth_hz", s.bandwidth_hz},
               {"num_rbs", s.num_rbs},
               {"min_rate_bps", s.min_rate_bps},
               {"objective", to_json(s.objective)},
               {"buffer_occupancy_prob", s.buffer_occupancy_prob},
               {"max_rbs_per_robot", s.max_rbs_per_robot},
               {"radio", radio},
               {"method", s.method},
               {"engine", s.engine},
               {"ga", ga},
               {"opro", opro}};
    if (s.task_switch) {
      sj["task_switch"] = {{"at_iteration", s.task_switch->at_iteration},
                           {"objective2", to_json(s.task_switch->objective2)}};
    }
    j["scheduling"] = sj;
  }
  if (cfg.channel) {
    const auto& c = *cfg.channel;
    json buildings = json::array();
    for (const auto& b : c.buildings) {
      buildings.push_back({{"x_min", b.x_min},
                           {"x_max", b.x_max},
                           {"y_min", b.y_min},
                           {"y_max", b.y_max},
                           {"height", b.height}});
    }
    j["channel"] = {{"buildings", buildings},
                    {"bs_pos", to_json(c.bs_pos)},
                    {"carrier_hz", c.carrier_hz},
                    {"num_antennas", c.num_antennas},
                    {"reflection_coeff", {c.reflection_coeff.real(), c.reflection_coeff.imag()}},
                    {"grid",
                     {{"x_min", c.grid.x_min},
                      {"x_max", c.grid.x_max},
                      {"y_min", c.grid.y_min},
                      {"y_max", c.grid.y_max},
                      {"spacing_m", c.grid.spacing_m},
                      {"user_z", c.grid.user_z}}},
                    {"training_spacing_m", c.training_spacing_m},
                    {"predictors", c.predictors}};
  }
  if (cfg.traffic) {
    const auto& t = *cfg.traffic;
    j["traffic"] = {{"area_m", t.area_m},
                    {"lane_width_total_m", t.lane_width_total_m},
                    {"num_vehicles", t.num_vehicles},
                    {"free_flow_speed_mps", t.free_flow_speed_mps},
                    {"headway_m", t.headway_m},
                    {"decision_interval_s", t.decision_interval_s},
                    {"min_green_s", t.min_green_s},
                    {"episode_s", t.episode_s},
                    {"dt_s", t.dt_s},
                    {"startup_delay_s", t.startup_delay_s},
                    {"saturation_headway_s", t.saturation_headway_s},
                    {"spawn_range_m", t.spawn_range_m},
                    {"visible_depth", t.visible_depth},
                    {"byte_budget", t.byte_budget},
                    {"controller", t.controller},
                    {"rr_green_s", t.rr_green_s},
                    {"view", to_string(t.view)}};
  }
  return j;
}

std::string serialize(const ScenarioConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

std::string config_digest(const ScenarioConfig& cfg) { return sha256_hex(to_json(cfg).dump()); }

ChannelSceneConfig channel_config_from_json(const json& j) {
  ChannelSceneConfig c = channel_from_json(j);
  validate(c);
  return c;
}

}  // namespace autocomm
