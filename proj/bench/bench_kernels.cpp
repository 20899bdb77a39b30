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

// Serial reference vs OpenMP kernel, side by side. Thread count follows
// OMP_NUM_THREADS.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "autocomm/channel/dataset.hpp"
#include "autocomm/channel/geometry.hpp"
#include "autocomm/channel/oracle.hpp"
#include "autocomm/core/rng.hpp"
#include "autocomm/radio/link.hpp"
#include "autocomm/sched/baselines.hpp"

namespace {

using namespace autocomm;

struct SchedCase {
  SchedulingConfig cfg;
  radio::SnrMap snr;
};

SchedCase sched_case(int robots) {
  SchedCase c;
  c.cfg.num_robots = robots;
  c.cfg.buffer_occupancy_prob = 1.0;
  auto rng = stream(7, "bench");
  c.snr = radio::generate_snr_map(c.cfg, c.cfg.radio, rng);
  return c;
}

void BM_BruteForceSerial(benchmark::State& st) {
  const auto c = sched_case(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    benchmark::DoNotOptimize(sched::brute_force_optimal_serial(c.cfg, c.snr, c.cfg.objective));
  }
}
void BM_BruteForceOmp(benchmark::State& st) {
  const auto c = sched_case(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    benchmark::DoNotOptimize(sched::brute_force_optimal(c.cfg, c.snr, c.cfg.objective));
  }
}
BENCHMARK(BM_BruteForceSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceOmp)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

// The GA has no separate serial entry point; one thread is its reference.
void BM_Ga(benchmark::State& st) {
  const auto c = sched_case(10);
  const int threads = st.range(0) == 0 ? 1 : omp_get_max_threads();
  const int saved = omp_get_max_threads();
  omp_set_num_threads(threads);
  for (auto _ : st) {
    auto rng = stream(1, "ga");
    benchmark::DoNotOptimize(sched::ga_schedule(c.cfg, c.snr, c.cfg.objective, c.cfg.ga, rng));
  }
  omp_set_num_threads(saved);
  st.counters["threads"] = threads;
}
BENCHMARK(BM_Ga)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

channel::Facade bench_facade() {
  channel::Facade f;
  f.axis = 1;
  f.coord = 4.0;
  f.sign = -1;
  f.u_min = -20.0;
  f.u_max = 20.0;
  f.z_min = 0.0;
  f.z_max = 15.0;
  return f;
}

void BM_GridOracleSerial(benchmark::State& st) {
  const auto f = bench_facade();
  for (auto _ : st) {
    benchmark::DoNotOptimize(
        channel::grid_search_reflection_oracle_serial({2.0, -3.0, 10.0}, {-5.0, 1.0, 1.5}, f, 0.01));
  }
}
void BM_GridOracleOmp(benchmark::State& st) {
  const auto f = bench_facade();
  for (auto _ : st) {
    benchmark::DoNotOptimize(
        channel::grid_search_reflection_oracle({2.0, -3.0, 10.0}, {-5.0, 1.0, 1.5}, f, 0.01));
  }
}
BENCHMARK(BM_GridOracleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridOracleOmp)->Unit(benchmark::kMillisecond);

void BM_DatasetSerial(benchmark::State& st) {
  const auto cfg = channel::fixture_scene(4);
  const auto scene = channel::make_scene(cfg);
  const auto pts = cfg.grid.points();
  for (auto _ : st) benchmark::DoNotOptimize(channel::generate_dataset_serial(scene, pts));
}
void BM_DatasetOmp(benchmark::State& st) {
  const auto cfg = channel::fixture_scene(4);
  const auto scene = channel::make_scene(cfg);
  const auto pts = cfg.grid.points();
  for (auto _ : st) benchmark::DoNotOptimize(channel::generate_dataset(scene, pts));
}
BENCHMARK(BM_DatasetSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DatasetOmp)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
