// Copyright 2026 The medop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <vector>

#include "medop/evolution.hpp"
#include "medop/pareto.hpp"
#include "medop/random.hpp"
#include "medop/scenario.hpp"
#include "medop/sensing.hpp"

using namespace medop;

namespace {

std::vector<Pose> random_poses(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Pose> poses;
    for (std::size_t i = 0; i < n; ++i) {
        poses.emplace_back(uniform(rng, 0.0, 30.0), uniform(rng, 0.0, 22.0), uniform(rng, 0.0, kTwoPi));
    }
    return poses;
}

void BM_DubinsShortest(benchmark::State& state) {
    const auto poses = random_poses(1024, 1);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& a = poses[i % poses.size()];
        const auto& b = poses[(i + 1) % poses.size()];
        benchmark::DoNotOptimize(dubins_shortest(a, b, 1.5));
        ++i;
    }
}
BENCHMARK(BM_DubinsShortest);

void BM_Exposure(benchmark::State& state) {
    const Scenario cross = generate_instance(InstanceKind::Cross, 1);
    const auto poses = random_poses(64, 2);
    std::vector<DubinsPath> curves;
    for (std::size_t i = 0; i + 1 < poses.size(); ++i) curves.push_back(dubins_shortest(poses[i], poses[i + 1], 1.5));
    const double step = static_cast<double>(state.range(0)) / 1000.0;
    std::size_t i = 0;
    double metres = 0.0;
    for (auto _ : state) {
        const auto& c = curves[i++ % curves.size()];
        benchmark::DoNotOptimize(exposure(cross.field, c, step));
        metres += c.length;
    }
    state.counters["m/s"] = benchmark::Counter(metres, benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Exposure)->Arg(10)->Arg(50)->Arg(200);

void BM_NonDominatedSort(benchmark::State& state) {
    Rng rng(3);
    std::vector<Fitness> pts;
    for (std::int64_t i = 0; i < state.range(0); ++i) {
        pts.push_back({uniform(rng, 0.0, 12.0), uniform(rng, 0.0, 3000.0), 0.0});
    }
    for (auto _ : state) benchmark::DoNotOptimize(non_dominated_sort(pts));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NonDominatedSort)->RangeMultiplier(2)->Range(100, 1600)->Complexity();

void BM_Evaluate(benchmark::State& state) {
    const Scenario cross = generate_instance(InstanceKind::Cross, 1);
    SolverParams params;
    params.population_size = 64;
    Rng rng(4);
    const auto pop = initialize_population(cross, params, rng);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(pop[i++ % pop.size()], cross, params.exposure_step));
}
BENCHMARK(BM_Evaluate);

}  // namespace

BENCHMARK_MAIN();
