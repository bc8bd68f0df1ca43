// Serial reference sweep vs. the OpenMP sweep on the figure presets.

#include <benchmark/benchmark.h>

#include "nmems/sweep.hpp"

namespace {

void BM_SweepSerial(benchmark::State& state, const char* name) {
    const nmems::SweepSpec spec = nmems::preset(name);
    for (auto _ : state) benchmark::DoNotOptimize(nmems::run_sweep_serial(spec));
}

void BM_SweepParallel(benchmark::State& state, const char* name) {
    const nmems::SweepSpec spec = nmems::preset(name);
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(nmems::run_sweep(spec, threads));
}

} // namespace

BENCHMARK_CAPTURE(BM_SweepSerial, fig1, "fig1")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SweepParallel, fig1, "fig1")->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SweepSerial, fig3, "fig3")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SweepParallel, fig3, "fig3")->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SweepSerial, fig4, "fig4")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SweepParallel, fig4, "fig4")->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
