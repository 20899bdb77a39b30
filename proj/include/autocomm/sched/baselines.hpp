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

#include <cstdint>
#include <span>
#include <vector>

#include "autocomm/core/error.hpp"
#include "autocomm/core/rng.hpp"
#include "autocomm/sched/allocation.hpp"

namespace autocomm::sched {

class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

/// RB b goes to eligible robot (b mod n_eligible), eligible ids ascending.
/// Throws InvalidArgument when no robot has data.
Allocation round_robin_alloc(const SchedulingConfig& cfg, const SnrMap& snr);

struct SearchResult {
  Allocation allocation;
  double score = 0.0;
  Fitness fitness;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

/// Exact argmax over every RB-owner vector of buffer-nonempty robots under
/// the Fitness order; ties go to the lexicographically smallest vector.
/// OpenMP kernel: each thread scans a contiguous block of the enumeration.
SearchResult brute_force_optimal(const SchedulingConfig& cfg, const SnrMap& snr,
                                 const ObjectiveSpec& objective,
                                 std::uint64_t enumeration_cap = kDefaultEnumerationCap);

/// Single-threaded reference for brute_force_optimal; same result bit for bit.
SearchResult brute_force_optimal_serial(const SchedulingConfig& cfg, const SnrMap& snr,
                                        const ObjectiveSpec& objective,
                                        std::uint64_t enumeration_cap = kDefaultEnumerationCap);

/// Number of candidates brute_force_optimal would enumerate (saturating).
std::uint64_t enumeration_size(int num_eligible, int num_rbs);

struct GaResult {
  Allocation allocation;
  double score = 0.0;
  Fitness fitness;
  int generations_used = 0;
  std::vector<double> best_score_per_generation;  // index 0 = initial population
};

/// Generational GA: tournament selection, uniform crossover, per-gene
/// mutation and elitism. Genes are buffer-nonempty robot ids. Each child is
/// bred from its own derived stream and the population is scored with an
/// OpenMP loop, so the result does not depend on the thread count.
/// `initial` seeds the first individuals; the rest are uniform random.
GaResult ga_schedule(const SchedulingConfig& cfg, const SnrMap& snr, const ObjectiveSpec& objective,
                     const GaParams& ga, RngStream& rng, std::span<const Allocation> initial = {});

}  // namespace autocomm::sched
