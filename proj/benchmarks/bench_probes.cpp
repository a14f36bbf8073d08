#include <benchmark/benchmark.h>

#include "qsdome/cone_map.hpp"
#include "qsdome/fixtures.hpp"
#include "qsdome/gauges.hpp"
#include "qsdome/metric_probes.hpp"
#include "qsdome/surface.hpp"

using namespace qsdome;

static const SurfaceMesh& disk_mesh() {
    static SurfaceMesh m = build_surface(fixtures::from_spec("circle"), Gauge::identity(), 256);
    return m;
}

static void BM_LlcProbe(benchmark::State& st) {
    const auto& m = disk_mesh();
    auto cs = default_centers(m, 8);
    std::vector<double> rs{0.5, 0.25};
    for (auto _ : st) benchmark::DoNotOptimize(llc_probe(m, cs, rs, ProbeKind::llc1).max_lambda);
}
BENCHMARK(BM_LlcProbe)->Unit(benchmark::kMillisecond);

static void BM_BallArea(benchmark::State& st) {
    const auto& m = disk_mesh();
    BallAreaIndex idx(m);
    size_t i = 0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(idx.area(m.vertices[i % m.vertices.size()], 0.3));
        i += 97;
    }
}
BENCHMARK(BM_BallArea);

static void BM_Koebe(benchmark::State& st) {
    auto map = ConformalMap::parse("quadratic:0.3");
    auto xs = koebe_samples(1000);
    for (auto _ : st) benchmark::DoNotOptimize(koebe_check(map, xs).passed());
}
BENCHMARK(BM_Koebe)->Unit(benchmark::kMillisecond);

static void BM_DomeDistortion(benchmark::State& st) {
    auto map = ConformalMap::parse("quadratic:0.3");
    for (auto _ : st) benchmark::DoNotOptimize(dilatation_estimate(map, {0.0, 0.9}, 32).sup);
}
BENCHMARK(BM_DomeDistortion)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
