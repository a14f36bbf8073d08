#include <benchmark/benchmark.h>

#include "qsdome/curve.hpp"
#include "qsdome/distance_levels.hpp"
#include "qsdome/fixtures.hpp"

using namespace qsdome;

static void BM_TwoPointCircle(benchmark::State& st) {
    auto c = fixtures::from_spec("circle:n=" + std::to_string(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(two_point_constant(c).value);
}
BENCHMARK(BM_TwoPointCircle)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

static void BM_ChordArcSquare(benchmark::State& st) {
    auto c = fixtures::from_spec("square:n=" + std::to_string(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(chord_arc_constant(c).value);
}
BENCHMARK(BM_ChordArcSquare)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_DistanceField(benchmark::State& st) {
    auto c = fixtures::from_spec("dumbbell");
    for (auto _ : st) {
        DistanceField f(c, static_cast<size_t>(st.range(0)));
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_DistanceField)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_LevelScanSquare(benchmark::State& st) {
    auto c = fixtures::from_spec("square");
    std::vector<double> ladder{0.4, 0.2, 0.1, 0.05, 0.025};
    for (auto _ : st) benchmark::DoNotOptimize(level_scan(c, ladder, 100.0, 100.0, 256).lca());
}
BENCHMARK(BM_LevelScanSquare)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
