/*
Copyright 2026 the cranidnc authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include <benchmark/benchmark.h>

#include "cranidnc/clique.hpp"
#include "cranidnc/conflict_graph.hpp"
#include "cranidnc/idnc.hpp"
#include "cranidnc/oracle.hpp"
#include "cranidnc/sched.hpp"

namespace {

using namespace cranidnc;

NetworkConfig bench_config(int users, int rrbs) {
    NetworkConfig cfg;
    cfg.num_rrhs = 3;
    cfg.num_rrbs = rrbs;
    cfg.num_users = users;
    cfg.num_files = 3;
    cfg.p_max_watts = dbm_to_watts(30.0);
    cfg.power_grid_points = 9;
    cfg.has_probability = 0.55;
    cfg.rng_seed = 11;
    return cfg;
}

void BM_EnumerateCombinations(benchmark::State& state) {
    const Instance inst = generate_instance(bench_config(static_cast<int>(state.range(0)), 1));
    for (auto _ : state) {
        auto combos = enumerate_combinations(inst.side_info, 0);
        benchmark::DoNotOptimize(combos);
    }
}
BENCHMARK(BM_EnumerateCombinations)->Arg(5)->Arg(7)->Arg(9);

void BM_BuildCranIdncGraph(benchmark::State& state) {
    const Instance inst = generate_instance(bench_config(6, static_cast<int>(state.range(0))));
    const auto combos = enumerate_combinations(inst.side_info, 0);
    const PowerSolver solver = make_grid_power_solver(inst);
    for (auto _ : state) {
        auto graph = build_cran_idnc_graph(inst, combos, solver);
        benchmark::DoNotOptimize(graph);
    }
}
BENCHMARK(BM_BuildCranIdncGraph)->Arg(1)->Arg(2);

void BM_ExactClique(benchmark::State& state) {
    const Instance inst = generate_instance(bench_config(6, 2));
    const auto combos = enumerate_combinations(inst.side_info, 0);
    const auto graph = build_cran_idnc_graph(inst, combos, make_grid_power_solver(inst));
    for (auto _ : state) {
        auto res = exact_max_weight_clique(graph.graph);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_ExactClique);

void BM_GreedyClique(benchmark::State& state) {
    const Instance inst = generate_instance(bench_config(6, 2));
    const auto combos = enumerate_combinations(inst.side_info, 0);
    const auto graph = build_cran_idnc_graph(inst, combos, make_grid_power_solver(inst));
    for (auto _ : state) {
        auto clique = greedy_max_weight_clique(graph.graph);
        benchmark::DoNotOptimize(clique);
    }
}
BENCHMARK(BM_GreedyClique);

void BM_ScheduleJoint(benchmark::State& state) {
    const Instance inst = generate_instance(bench_config(static_cast<int>(state.range(0)), 2));
    for (auto _ : state) {
        auto plan = schedule_joint(inst);
        benchmark::DoNotOptimize(plan);
    }
}
BENCHMARK(BM_ScheduleJoint)->Arg(5)->Arg(7);

void BM_ScheduleIterative(benchmark::State& state) {
    const Instance inst = generate_instance(bench_config(7, 2));
    for (auto _ : state) {
        auto plan = schedule_iterative(inst);
        benchmark::DoNotOptimize(plan);
    }
}
BENCHMARK(BM_ScheduleIterative);

} // namespace

BENCHMARK_MAIN();
