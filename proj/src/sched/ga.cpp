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

#include <algorithm>
#include <numeric>

#include "autocomm/core/error.hpp"
#include "autocomm/sched/baselines.hpp"

namespace autocomm::sched {

namespace {

struct Individual {
  std::vector<RobotId> genes;
  Fitness fitness;
};

// Total order: better fitness first, then lexicographically smaller genes.
bool ranks_before(const Individual& a, const Individual& b) {
  if (a.fitness.better_than(b.fitness)) return true;
  if (b.fitness.better_than(a.fitness)) return false;
  return a.genes < b.genes;
}

void score_population(const Evaluator& eval, std::vector<Individual>& pop, std::size_t first) {
  const auto n = static_cast<long>(pop.size());
#pragma omp parallel for schedule(static)
  for (long i = static_cast<long>(first); i < n; ++i) {
    pop[static_cast<std::size_t>(i)].fitness = eval.assess(pop[static_cast<std::size_t>(i)].genes);
  }
}

// Index into the ranked population; lower is better.
std::size_t tournament(std::size_t pop_size, int size, RngStream& rng) {
  std::size_t best = pop_size;
  for (int k = 0; k < size; ++k) best = std::min<std::size_t>(best, rng.below(pop_size));
  return best;
}

}  // namespace

GaResult ga_schedule(const SchedulingConfig& cfg, const SnrMap& snr, const ObjectiveSpec& objective,
                     const GaParams& ga, RngStream& rng, std::span<const Allocation> initial) {
  const Evaluator eval(snr, cfg, objective);
  const auto& eligible = eval.eligible();
  if (eligible.empty()) throw InvalidArgument("ga_schedule: no robot has buffered data");
  const auto n_genes = static_cast<std::size_t>(cfg.num_rbs);
  const auto pop_size = static_cast<std::size_t>(ga.population);
  const auto elites = static_cast<std::size_t>(std::min(ga.elitism, ga.population));

  const RngStream base = rng.derive(rng.next_u64());

  std::vector<Individual> pop(pop_size);
  {
    RngStream init = base.derive("init");
    for (std::size_t i = 0; i < pop_size; ++i) {
      auto& genes = pop[i].genes;
      if (i < initial.size()) {
        genes = initial[i].rb_owner;
        if (genes.size() != n_genes ||
            std::any_of(genes.begin(), genes.end(), [&](RobotId r) {
              return !std::binary_search(eligible.begin(), eligible.end(), r);
            })) {
          throw InvalidArgument("ga_schedule: seed individual " + initial[i].to_string() +
                                " is not a vector of eligible robot ids");
        }
      } else {
        genes.resize(n_genes);
        for (auto& g : genes) g = eligible[init.below(eligible.size())];
      }
    }
  }
  score_population(eval, pop, 0);
  std::sort(pop.begin(), pop.end(), ranks_before);

  GaResult result;
  result.best_score_per_generation.push_back(pop.front().fitness.score);

  std::vector<Individual> next(pop_size);
  for (int gen = 0; gen < ga.generations; ++gen) {
    for (std::size_t i = 0; i < elites; ++i) next[i] = pop[i];
    const auto children = static_cast<long>(pop_size);
#pragma omp parallel for schedule(static)
    for (long ci = static_cast<long>(elites); ci < children; ++ci) {
      const auto i = static_cast<std::size_t>(ci);
      RngStream r = base.derive(static_cast<std::uint64_t>(gen) * pop_size + i);
      const auto& a = pop[tournament(pop_size, ga.tournament_size, r)].genes;
      const auto& b = pop[tournament(pop_size, ga.tournament_size, r)].genes;
      auto& child = next[i].genes;
      child = a;
      if (r.bernoulli(ga.crossover_prob)) {
        for (std::size_t g = 0; g < n_genes; ++g) {
          if (r.bernoulli(0.5)) child[g] = b[g];
        }
      }
      for (auto& g : child) {
        if (r.bernoulli(ga.mutation_prob)) g = eligible[r.below(eligible.size())];
      }
      next[i].fitness = eval.assess(child);
    }
    std::swap(pop, next);
    std::sort(pop.begin(), pop.end(), ranks_before);
    result.best_score_per_generation.push_back(pop.front().fitness.score);
    result.generations_used = gen + 1;
  }

  const Individual& best = pop.front();
  if (best.fitness.tier == Fitness::Tier::Unscorable) {
    throw InvalidArgument("ga_schedule: no individual satisfies the per-robot RB cap");
  }
  result.allocation.rb_owner = best.genes;
  result.fitness = best.fitness;
  result.score = best.fitness.score;
  return result;
}

}  // namespace autocomm::sched
