/* Copyright 2026 The qkdlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial reference vs OpenMP for each Monte Carlo kernel.

#include "qkdlab/channel.hpp"
#include "qkdlab/ee_protocol.hpp"
#include "qkdlab/kernels.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace qkdlab;

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::serial : Exec::openmp;
}

void BM_Bb84Exchange(benchmark::State& state) {
  const Exec exec = exec_of(state);
  const auto n = static_cast<std::uint64_t>(state.range(1));
  const ModeSchedule schedule = ModeSchedule::from_decoy_frequencies(0.25, 0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_bb84_exchange(n, WlpSourceConfig{0.5}, schedule, {0.5, 0.05},
                                               {EveKind::PnsQnd, 0.5}, 1, exec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
  state.SetLabel(std::string(to_string(exec)));
}
BENCHMARK(BM_Bb84Exchange)->ArgsProduct({{0, 1}, {100000, 1000000}})->Unit(benchmark::kMillisecond);

void BM_EveDecoyFractions(benchmark::State& state) {
  const Exec exec = exec_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        eve_decoy_fractions(DecoyIntensityConfig::defaults(), 0.5, state.range(1), 2, exec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
  state.SetLabel(std::string(to_string(exec)));
}
BENCHMARK(BM_EveDecoyFractions)->ArgsProduct({{0, 1}, {1000000}})->Unit(benchmark::kMillisecond);

void BM_EmpiricalErrorRate(benchmark::State& state) {
  const Exec exec = exec_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(empirical_error_rate({0.9, 0.5}, 50, state.range(1), 3, exec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
  state.SetLabel(std::string(to_string(exec)));
}
BENCHMARK(BM_EmpiricalErrorRate)->ArgsProduct({{0, 1}, {100000}})->Unit(benchmark::kMillisecond);

void BM_DetectionEpisodes(benchmark::State& state) {
  const Exec exec = exec_of(state);
  EpisodeConfig cfg;
  cfg.channel = {0.5, 0.0};
  cfg.eve = {EveKind::PnsQnd, 0.5};
  cfg.n_slots = 2000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_detection_episodes(cfg, state.range(1), 4, exec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
  state.SetLabel(std::string(to_string(exec)));
}
BENCHMARK(BM_DetectionEpisodes)->ArgsProduct({{0, 1}, {1000}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
