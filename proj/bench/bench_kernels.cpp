// SPDX-License-Identifier: Apache-2.0
//
// cfisac: cell-free ISAC simulator with a proactive monitor
// Copyright (C) 2026 The cfisac authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Serial reference against the OpenMP kernels.
#include <benchmark/benchmark.h>

#include "cfisac/exec.hpp"
#include "cfisac/metrics.hpp"
#include "cfisac/oracle.hpp"
#include "cfisac/scenario.hpp"

using namespace cfisac;

namespace
{

ExecPolicy policy_of(const benchmark::State &state)
{
    return state.range(0) == 0 ? ExecPolicy::serial : ExecPolicy::parallel;
}

void BM_OracleTrials(benchmark::State &state)
{
    const Scenario sc = make_scenario(default_config(), 1, 0);
    const int trials = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_all(sc, trials, 1, 0, policy_of(state)));
    state.SetItemsProcessed(state.iterations() * trials);
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel x" + std::to_string(thread_count()));
}

void BM_TopologyDraws(benchmark::State &state)
{
    const SystemConfig cfg = default_config();
    const int draws = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_draws(cfg, draws, 1, MonitorMode::active, FormVariant::corrected,
                                                policy_of(state)));
    state.SetItemsProcessed(state.iterations() * draws);
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel x" + std::to_string(thread_count()));
}

} // namespace

BENCHMARK(BM_OracleTrials)->Args({0, 2000})->Args({1, 2000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TopologyDraws)->Args({0, 500})->Args({1, 500})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
