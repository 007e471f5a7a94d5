// SPDX-License-Identifier: Apache-2.0

#include "lincoh/closed_forms.hpp"
#include "lincoh/instances.hpp"
#include "lincoh/oracle.hpp"
#include "lincoh/solver.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace lincoh;

Instance rgg_instance(int n)
{
    InstanceSpec spec;
    spec.seed = 1;
    spec.n_sensors = n;
    spec.covariance = ExponentialCovariance{0.5, 1e-3};
    spec.eta2 = 1.0;
    return generate(spec);
}

void BM_Embed(benchmark::State& state)
{
    const double radius = static_cast<double>(state.range(0)) / 10.0;
    const Instance inst = rgg_instance(50);
    const Topology topo = make_rgg(radius, inst.positions);
    for (auto _ : state) {
        benchmark::DoNotOptimize(embed(topo, inst.observation, inst.channel));
    }
    state.counters["links"] = topo.n_links();
}
BENCHMARK(BM_Embed)->Arg(0)->Arg(3)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_SolveInfoForPower(benchmark::State& state)
{
    const Instance inst = rgg_instance(50);
    const EmbeddedProblem ep = embed(make_rgg(0.3, inst.positions), inst.observation, inst.channel);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_info_for_power(ep, inst.observation, inst.channel, 1.0));
    }
}
BENCHMARK(BM_SolveInfoForPower)->Unit(benchmark::kMicrosecond);

void BM_SolvePowerForInfo(benchmark::State& state)
{
    const Instance inst = rgg_instance(50);
    const EmbeddedProblem ep = embed(make_rgg(0.3, inst.positions), inst.observation, inst.channel);
    const double target = 0.5 * centralized_info(inst.observation);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_power_for_info(ep, inst.observation, inst.channel, target));
    }
}
BENCHMARK(BM_SolvePowerForInfo)->Unit(benchmark::kMicrosecond);

void BM_SphereSearch(benchmark::State& state)
{
    const Instance inst = rgg_instance(4);
    const EmbeddedProblem ep = embed(make_fully_connected(4), inst.observation, inst.channel);
    oracle::SearchOptions opts;
    opts.n_directions = static_cast<int>(state.range(0));
    opts.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::sphere_search_max_info(ep, inst.observation, inst.channel, 1.0, opts));
    }
}
BENCHMARK(BM_SphereSearch)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
