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

#include "autocomm/sched/baselines.hpp"

#include <omp.h>

#include <algorithm>
#include <limits>

#include "autocomm/core/error.hpp"

namespace autocomm::sched {

Allocation round_robin_alloc(const SchedulingConfig& cfg, const SnrMap& snr) {
  const auto eligible = snr.eligible();
  if (eligible.empty()) throw InvalidArgument("round_robin_alloc: no robot has buffered data");
  Allocation a;
  a.rb_owner.resize(static_cast<std::size_t>(cfg.num_rbs));
  for (int b = 0; b < cfg.num_rbs; ++b) a.rb_owner[b] = eligible[b % eligible.size()];
  return a;
}

std::uint64_t enumeration_size(int num_eligible, int num_rbs) {
  std::uint64_t total = 1;
  for (int b = 0; b < num_rbs; ++b) {
    if (num_eligible != 0 &&
        total > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(num_eligible)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= static_cast<std::uint64_t>(num_eligible);
  }
  return total;
}

namespace {

struct Best {
  std::uint64_t index = 0;
  Fitness fitness;
  bool found = false;

  // Candidates arrive in increasing index order within a block, so only a
  // strictly better fitness replaces the incumbent.
  void offer(std::uint64_t i, const Fitness& f) {
    if (f.tier == Fitness::Tier::Unscorable) return;
    if (!found || f.better_than(fitness)) {
      index = i;
      fitness = f;
      found = true;
    }
  }

  // Merge across blocks: better fitness wins, equal fitness keeps the lower index.
  void merge(const Best& o) {
    if (!o.found) return;
    if (!found || o.fitness.better_than(fitness) ||
        (!fitness.better_than(o.fitness) && o.index < index)) {
      *this = o;
    }
  }
};

// Owners of candidate `index`, RB 0 being the most significant digit.
void decode(std::uint64_t index, const std::vector<RobotId>& eligible, std::span<RobotId> owners) {
  const auto n = static_cast<std::uint64_t>(eligible.size());
  for (auto b = static_cast<long>(owners.size()) - 1; b >= 0; --b) {
    owners[static_cast<std::size_t>(b)] = eligible[index % n];
    index /= n;
  }
}

// Scans [begin, end) with an odometer over digit positions.
Best scan(const Evaluator& eval, std::uint64_t begin, std::uint64_t end) {
  Best best;
  if (begin >= end) return best;
  const auto& eligible = eval.eligible();
  const int n = static_cast<int>(eligible.size());
  const int rbs = eval.num_rbs();
  std::vector<RobotId> owners(static_cast<std::size_t>(rbs));
  std::vector<int> digit(static_cast<std::size_t>(rbs));
  decode(begin, eligible, owners);
  for (int b = 0; b < rbs; ++b) {
    digit[b] = static_cast<int>(std::find(eligible.begin(), eligible.end(), owners[b]) - eligible.begin());
  }
  for (std::uint64_t i = begin; i < end; ++i) {
    best.offer(i, eval.assess(owners));
    for (int b = rbs - 1; b >= 0; --b) {
      if (++digit[b] < n) {
        owners[b] = eligible[digit[b]];
        break;
      }
      digit[b] = 0;
      owners[b] = eligible[0];
    }
  }
  return best;
}

struct Prepared {
  Evaluator eval;
  std::uint64_t total;
};

Prepared prepare(const SchedulingConfig& cfg, const SnrMap& snr, const ObjectiveSpec& objective,
                 std::uint64_t cap) {
  Evaluator eval(snr, cfg, objective);
  if (eval.eligible().empty()) {
    throw InvalidArgument("brute_force_optimal: no robot has buffered data");
  }
  const auto total = enumeration_size(static_cast<int>(eval.eligible().size()), cfg.num_rbs);
  if (total > cap) {
    throw InstanceTooLarge("brute_force_optimal: " + std::to_string(eval.eligible().size()) +
                           "^" + std::to_string(cfg.num_rbs) + " candidates exceed the cap of " +
                           std::to_string(cap));
  }
  return {std::move(eval), total};
}

SearchResult finish(const Evaluator& eval, const Best& best) {
  if (!best.found) {
    throw InvalidArgument("brute_force_optimal: no allocation satisfies the per-robot RB cap");
  }
  SearchResult out;
  out.allocation.rb_owner.resize(static_cast<std::size_t>(eval.num_rbs()));
  decode(best.index, eval.eligible(), out.allocation.rb_owner);
  out.fitness = best.fitness;
  out.score = best.fitness.score;
  return out;
}

}  // namespace

SearchResult brute_force_optimal_serial(const SchedulingConfig& cfg, const SnrMap& snr,
                                        const ObjectiveSpec& objective,
                                        std::uint64_t enumeration_cap) {
  const auto [eval, total] = prepare(cfg, snr, objective, enumeration_cap);
  return finish(eval, scan(eval, 0, total));
}

SearchResult brute_force_optimal(const SchedulingConfig& cfg, const SnrMap& snr,
                                 const ObjectiveSpec& objective, std::uint64_t enumeration_cap) {
  const auto [eval, total] = prepare(cfg, snr, objective, enumeration_cap);
  std::vector<Best> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    const auto threads = static_cast<std::uint64_t>(omp_get_num_threads());
    const auto tid = static_cast<std::uint64_t>(omp_get_thread_num());
    const std::uint64_t block = (total + threads - 1) / threads;
    const std::uint64_t begin = std::min(total, tid * block);
    const std::uint64_t end = std::min(total, begin + block);
    partial[tid] = scan(eval, begin, end);
  }
  Best best;
  for (const auto& p : partial) best.merge(p);
  return finish(eval, best);
}

}  // namespace autocomm::sched
