#include "isomono/presets.hpp"
#include "isomono/verification.hpp"

#include <benchmark/benchmark.h>

using namespace isomono;

namespace {

void BM_Suite(benchmark::State& state) {
    SuiteOptions opt;
    opt.seed = 0;
    opt.count = static_cast<int>(state.range(0));
    opt.parallel = state.range(1) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(run_suite(opt));
    state.SetLabel(opt.parallel ? "parallel" : "serial");
}
BENCHMARK(BM_Suite)->Args({8, 0})->Args({8, 1})->Unit(benchmark::kMillisecond);

void BM_EvolutionField(benchmark::State& state) {
    PoleStructure orders;
    orders.r_inf = static_cast<int>(state.range(0));
    SuiteRng rng = suite_rng(0, 0);
    const ConnectionConfig config = sample_config(rng, orders);
    const DarbouxState st = sample_state(rng, config);
    const DeformationVector alpha = sample_direction(rng, config);
    for (auto _ : state) benchmark::DoNotOptimize(evolution_field(config, st, alpha));
    state.counters["genus"] = config.genus();
}
BENCHMARK(BM_EvolutionField)->DenseRange(4, 9)->Unit(benchmark::kMicrosecond);

void BM_PainleveTwoTrajectory(benchmark::State& state) {
    const DarbouxState st{{cplx(0.4, 0.2)}, {cplx(0.1, 0.0)}};
    const PainlevePreset pre = painleve_preset(PainleveId::P2, {0.3, {}, 1.0}, {0.9}, st);
    StepControl sc;
    sc.step = 1e-3;
    for (auto _ : state) benchmark::DoNotOptimize(integrate_flow(pre.schedule(), st, 0.9, 1.4, sc));
}
BENCHMARK(BM_PainleveTwoTrajectory)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
