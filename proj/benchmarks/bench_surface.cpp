#include <benchmark/benchmark.h>

#include "qsdome/fixtures.hpp"
#include "qsdome/gauges.hpp"
#include "qsdome/surface.hpp"

using namespace qsdome;

static void BM_BuildSurfaceDisk(benchmark::State& st) {
    auto c = fixtures::from_spec("circle");
    auto g = Gauge::identity();
    for (auto _ : st) benchmark::DoNotOptimize(build_surface(c, g, static_cast<size_t>(st.range(0))).area());
}
BENCHMARK(BM_BuildSurfaceDisk)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_BuildSurfaceCusp(benchmark::State& st) {
    auto c = fixtures::from_spec("cusp");
    auto g = Gauge::parse("power:0.5");
    for (auto _ : st) benchmark::DoNotOptimize(build_surface(c, g, 256).area());
}
BENCHMARK(BM_BuildSurfaceCusp)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
