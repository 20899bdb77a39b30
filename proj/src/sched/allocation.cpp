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

#include "autocomm/sched/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "autocomm/core/error.hpp"

namespace autocomm::sched {

std::string Allocation::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rb_owner.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(rb_owner[i]);
  }
  return out + "]";
}

std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::UnknownRobot: return "UnknownRobot";
    case ViolationKind::EmptyBufferRobot: return "EmptyBufferRobot";
    case ViolationKind::WrongLength: return "WrongLength";
    case ViolationKind::QosViolation: return "QosViolation";
    case ViolationKind::ExcessiveRbs: return "ExcessiveRbs";
  }
  return "?";
}

const Violation* ValidationReport::find(ViolationKind k) const {
  for (const auto& v : violations) {
    if (v.kind == k) return &v;
  }
  return nullptr;
}

bool ValidationReport::scorable() const {
  return std::all_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.kind == ViolationKind::QosViolation; });
}

int ValidationReport::qos_violation_count() const {
  const Violation* v = find(ViolationKind::QosViolation);
  return v ? static_cast<int>(v->robots.size()) : 0;
}

namespace {

std::string join_ids(const std::vector<RobotId>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(ids[i]);
  }
  return out;
}

}  // namespace

ValidationReport validate(const Allocation& alloc, const SnrMap& snr, const SchedulingConfig& cfg,
                          const ObjectiveSpec& objective) {
  ValidationReport report;
  const auto& owners = alloc.rb_owner;
  const int n = static_cast<int>(owners.size());
  const bool right_length = n == cfg.num_rbs && n == snr.num_rbs();

  if (!right_length) {
    report.violations.push_back({ViolationKind::WrongLength, {}, n, cfg.num_rbs,
                                 std::to_string(n) + "!=" + std::to_string(cfg.num_rbs)});
  }

  std::set<RobotId> unknown;
  std::set<RobotId> empty;
  std::map<RobotId, int> counts;
  for (RobotId r : owners) {
    if (!snr.valid_id(r)) {
      unknown.insert(r);
    } else {
      if (!snr.has_buffer(r)) empty.insert(r);
      ++counts[r];
    }
  }
  if (!unknown.empty()) {
    std::vector<RobotId> ids(unknown.begin(), unknown.end());
    report.violations.push_back({ViolationKind::UnknownRobot, ids, 0, 0, join_ids(ids)});
  }
  if (!empty.empty()) {
    std::vector<RobotId> ids(empty.begin(), empty.end());
    report.violations.push_back({ViolationKind::EmptyBufferRobot, ids, 0, 0, join_ids(ids)});
  }
  const int cap = cfg.rb_cap();
  for (const auto& [robot, count] : counts) {
    if (count > cap) {
      report.violations.push_back({ViolationKind::ExcessiveRbs, {robot}, count, cap,
                                   "robot " + std::to_string(robot) + " holds " +
                                       std::to_string(count) + ">" + std::to_string(cap)});
    }
  }

  if (objective.has_qos() && right_length) {
    const auto rates = radio::robot_rates(owners, snr, cfg);
    std::vector<RobotId> unmet;
    for (int i = 0; i < snr.num_robots(); ++i) {
      if (snr.buffer_nonempty[i] && rates.rates_bps[i] < objective.min_rate_bps) {
        unmet.push_back(i + 1);
      }
    }
    if (!unmet.empty()) {
      report.violations.push_back({ViolationKind::QosViolation, unmet, 0, 0, join_ids(unmet)});
    }
  }

  report.ok = report.violations.empty();
  return report;
}

bool Fitness::better_than(const Fitness& o) const {
  if (tier != o.tier) return tier > o.tier;
  if (tier == Tier::Unscorable) return false;
  if (tier == Tier::QosInfeasible && qos_violations != o.qos_violations) {
    return qos_violations < o.qos_violations;
  }
  return score > o.score;
}

Fitness make_fitness(const ValidationReport& report, std::optional<double> score) {
  if (!report.scorable() || !score) return {};
  if (report.ok) return {Fitness::Tier::Feasible, 0, *score};
  return {Fitness::Tier::QosInfeasible, report.qos_violation_count(), *score};
}

Evaluator::Evaluator(const SnrMap& snr, const SchedulingConfig& cfg, const ObjectiveSpec& objective)
    : num_robots_(snr.num_robots()),
      num_rbs_(snr.num_rbs()),
      rb_cap_(cfg.rb_cap()),
      objective_(objective),
      table_(static_cast<std::size_t>(snr.num_robots()) * snr.num_rbs()),
      buffer_(snr.buffer_nonempty),
      eligible_(snr.eligible()) {
  for (int i = 0; i < num_robots_; ++i) {
    for (int b = 0; b < num_rbs_; ++b) {
      table_[static_cast<std::size_t>(i) * num_rbs_ + b] = radio::rb_rate_bps(snr.at(i, b), cfg);
    }
  }
}

void Evaluator::rates(std::span<const RobotId> rb_owner, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (int b = 0; b < num_rbs_; ++b) {
    const int i = rb_owner[b] - 1;
    if (buffer_[i]) out[i] += table_[static_cast<std::size_t>(i) * num_rbs_ + b];
  }
}

namespace {

// Stack storage for per-robot scratch arrays with a heap fallback.
template <typename T>
class Scratch {
 public:
  explicit Scratch(int n) {
    if (n <= kInline) {
      view_ = {inline_, static_cast<std::size_t>(n)};
    } else {
      heap_.resize(static_cast<std::size_t>(n));
      view_ = heap_;
    }
  }
  std::span<T> span() { return view_; }

 private:
  static constexpr int kInline = 64;
  T inline_[kInline]{};
  std::vector<T> heap_;
  std::span<T> view_;
};

}  // namespace

double Evaluator::objective_value(std::span<const double> r) const {
  const double rmin = objective_.min_rate_bps;
  double total = 0.0;
  switch (objective_.kind) {
    case ObjectiveKind::ProportionalFairness:
      for (int i = 0; i < num_robots_; ++i) {
        if (buffer_[i]) total += std::log2(std::max(r[i], objective_.epsilon));
      }
      break;
    case ObjectiveKind::QosSumRate:
      for (int i = 0; i < num_robots_; ++i) total += r[i] < rmin ? 0.0 : r[i];
      break;
    case ObjectiveKind::QosPf:
      for (int i = 0; i < num_robots_; ++i) {
        if (!buffer_[i]) continue;
        const double clamped = r[i] < rmin ? 0.0 : r[i];
        total += std::log2(std::max(clamped, objective_.epsilon));
      }
      break;
  }
  return total;
}

double Evaluator::score(std::span<const RobotId> rb_owner) const {
  Scratch<double> r(num_robots_);
  rates(rb_owner, r.span());
  return objective_value(r.span());
}

Fitness Evaluator::assess(std::span<const RobotId> rb_owner) const {
  Scratch<int> counts(num_robots_);
  auto c = counts.span();
  for (int b = 0; b < num_rbs_; ++b) {
    if (++c[rb_owner[b] - 1] > rb_cap_) return {};
  }
  Scratch<double> r(num_robots_);
  rates(rb_owner, r.span());
  Fitness f{Fitness::Tier::Feasible, 0, objective_value(r.span())};
  if (objective_.has_qos()) {
    for (int i = 0; i < num_robots_; ++i) {
      if (buffer_[i] && r.span()[i] < objective_.min_rate_bps) ++f.qos_violations;
    }
    if (f.qos_violations > 0) f.tier = Fitness::Tier::QosInfeasible;
  }
  return f;
}

double evaluate(const Allocation& alloc, const SnrMap& snr, const SchedulingConfig& cfg,
                const ObjectiveSpec& objective) {
  const auto report = validate(alloc, snr, cfg, objective);
  if (!report.scorable()) {
    throw InvalidArgument("evaluate: allocation " + alloc.to_string() +
                          " is structurally invalid (" +
                          std::string(to_string(report.violations.front().kind)) + ")");
  }
  return Evaluator(snr, cfg, objective).score(alloc.rb_owner);
}

}  // namespace autocomm::sched
