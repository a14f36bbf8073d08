#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qsdome/fixtures.hpp"
#include "qsdome/metric_probes.hpp"
#include "qsdome/surface.hpp"

using namespace qsdome;
using doctest::Approx;

namespace {

size_t grid_index(const std::vector<double>& grid, double v) {
    for (size_t i = 0; i < grid.size(); ++i)
        if (grid[i] == v) return i;
    return grid.size();
}

// Upper-sheet vertices nearest to points at planar radius rho on the unit disk.
std::vector<uint32_t> near_equator(const SurfaceMesh& m, double rho) {
    std::vector<uint32_t> out;
    for (double ang : {0.3, 1.7, 3.1, 4.4}) {
        Vec2 p{rho * std::cos(ang), rho * std::sin(ang)};
        uint32_t best = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (uint32_t i = 0; i < m.vertices.size(); ++i) {
            if (m.vertices[i].z <= 0) continue;
            double d = dist(m.planar[i], p);
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        out.push_back(best);
    }
    return out;
}

}  // namespace

TEST_CASE("round sphere is 2-LLC") {
    auto s = sphere_mesh(1.0, 4);
    auto cs = default_centers(s, 16);
    std::vector<double> rs{0.8, 0.4, 0.2};
    for (auto k : {ProbeKind::llc1, ProbeKind::llc2}) {
        auto rep = llc_probe(s, cs, rs, k);
        CHECK(rep.all_feasible);
        CHECK(rep.max_lambda <= 2.0);
        for (auto& smp : rep.samples) CHECK(smp.value >= 1.0);
    }
}

TEST_CASE("disk cone has a uniform LLC constant") {
    auto m = build_surface(fixtures::circle(), Gauge::identity(), 256);
    auto cs = default_centers(m, 16);
    std::vector<double> rs{0.5, 0.25, 0.125};
    auto grid = default_lambda_grid();
    for (auto k : {ProbeKind::llc1, ProbeKind::llc2}) {
        auto rep = llc_probe(m, cs, rs, k);
        CHECK(rep.all_feasible);
        size_t lo = grid.size(), hi = 0;
        for (double r : rs) {
            size_t g = grid_index(grid, rep.max_lambda_at(r));
            lo = std::min(lo, g);
            hi = std::max(hi, g);
        }
        CHECK(hi - lo <= 1);
        CHECK(rep.max_lambda <= 2.0);
    }
}

TEST_CASE("quadratic gauge loses LLC near the equator") {
    auto m = build_surface(fixtures::circle(), Gauge::power(2.0), 384);
    auto cs = near_equator(m, 0.92);
    std::vector<double> rs{0.064, 0.032, 0.016};
    auto rep = llc_probe(m, cs, rs, ProbeKind::llc1);
    double l0 = rep.max_lambda_at(0.064), l2 = rep.max_lambda_at(0.016);
    CHECK(l2 >= 2.0 * l0);
    CHECK(rep.max_lambda_at(0.032) > l0);

    // every witness is disconnected at its lambda and the reported lambda connects it
    size_t replayed = 0;
    for (const auto& s : rep.samples) {
        if (!s.witness) continue;
        CHECK_FALSE(llc_pair_connected(m, s.center, s.r, s.witness->lambda, ProbeKind::llc1, s.witness->a, s.witness->b));
        CHECK(llc_pair_connected(m, s.center, s.r, s.value, ProbeKind::llc1, s.witness->a, s.witness->b));
        ++replayed;
    }
    CHECK(replayed >= 4);
}

TEST_CASE("lambda under grid refinement and edge subdivision") {
    auto m = build_surface(fixtures::circle(), Gauge::power(2.0), 192);
    auto cs = near_equator(m, 0.9);
    std::vector<double> rs{0.08, 0.04};
    auto fine = llc_probe(m, cs, rs, ProbeKind::llc1);
    LlcOptions coarse_opt;
    coarse_opt.lambda_grid = {1, 2, 4, 8, 16, 32, 64};
    auto coarse = llc_probe(m, cs, rs, ProbeKind::llc1, coarse_opt);
    for (size_t i = 0; i < fine.samples.size(); ++i) CHECK(fine.samples[i].value <= coarse.samples[i].value);

    LlcOptions sub;
    sub.subdivision = 20.0;
    auto finer_edges = llc_probe(m, cs, rs, ProbeKind::llc1, sub);
    auto grid = default_lambda_grid();
    for (size_t i = 0; i < fine.samples.size(); ++i) {
        auto a = grid_index(grid, fine.samples[i].value), b = grid_index(grid, finer_edges.samples[i].value);
        CHECK((a > b ? a - b : b - a) <= 1);
    }
}

TEST_CASE("similarity invariance of the probes") {
    auto m = build_surface(fixtures::ellipse(1.0, 0.6), Gauge::power(0.5), 128);
    auto cs = default_centers(m, 8);
    std::vector<double> rs{0.6, 0.3};
    const double s = 3.7;
    SurfaceMesh big = m;
    for (auto& v : big.vertices) v = v * s;
    std::vector<double> big_rs{rs[0] * s, rs[1] * s};
    for (auto k : {ProbeKind::llc1, ProbeKind::llc2}) {
        auto a = llc_probe(m, cs, rs, k), b = llc_probe(big, cs, big_rs, k);
        for (size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i].value == b.samples[i].value);
    }
    auto a = regularity_probe(m, cs, rs), b = regularity_probe(big, cs, big_rs);
    for (size_t i = 0; i < a.samples.size(); ++i) CHECK(std::abs(a.samples[i].value - b.samples[i].value) <= 1e-9);
}

TEST_CASE("ball area index agrees with a direct sum") {
    auto m = build_surface(fixtures::dumbbell(), Gauge::power(0.5), 64);
    BallAreaIndex idx(m);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.5, 2.5), ur(0.05, 2.0);
    for (int k = 0; k < 20; ++k) {
        Vec3 c{u(rng), u(rng) * 0.5, u(rng) * 0.3};
        double r = ur(rng);
        double direct = 0;
        for (const auto& f : m.triangles) direct += triangle_ball_area(m.vertices[f[0]], m.vertices[f[1]], m.vertices[f[2]], c, r);
        CHECK(idx.area(c, r) == Approx(direct).epsilon(1e-10));
    }
    CHECK(idx.area({0, 0, 0}, 100.0) == Approx(m.area()).epsilon(1e-12));
}

TEST_CASE("regularity on the sphere and the square roof") {
    auto s = sphere_mesh(1.0, 5);
    auto rep = regularity_probe(s, default_centers(s, 16), {0.5, 1.0, 1.9});
    CHECK(rep.min_ratio >= 0.95);
    CHECK(rep.max_ratio <= std::numbers::pi * 1.05);

    auto sq = build_surface(fixtures::square(2.0), Gauge::identity(), 256);
    auto r2 = regularity_probe(sq, default_centers(sq, 32), default_radii(sq, 7));
    double C = std::max(r2.max_ratio, 1.0 / r2.min_ratio);
    CHECK(C <= 20.0);
    CHECK(r2.min_ratio > 0.0);
}

TEST_CASE("probe preconditions") {
    auto sq = build_surface(fixtures::square(2.0), Gauge::identity(), 64);
    SurfaceMesh open = sq;
    open.triangles.resize(open.triangles.size() / 2);
    CHECK_THROWS_AS(regularity_probe(open, {0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(regularity_probe(sq, {0}, {1e-4}), std::invalid_argument);
    CHECK_THROWS_AS(regularity_probe(sq, {0}, {100.0}), std::invalid_argument);

    auto a = sphere_mesh(1.0, 1), b = sphere_mesh(1.0, 1);
    SurfaceMesh two = a;
    auto off = static_cast<uint32_t>(a.vertices.size());
    for (auto v : b.vertices) two.vertices.push_back(v + Vec3{5, 0, 0});
    for (auto f : b.triangles) two.triangles.push_back({f[0] + off, f[1] + off, f[2] + off});
    CHECK_THROWS_AS(llc_probe(two, {0}, {0.5}, ProbeKind::llc1), std::invalid_argument);
}

TEST_CASE("necessity cross-check") {
    auto disk = necessity_check(fixtures::circle(), Gauge::identity(), 128, 16, 3);
    CHECK(disk.C_hat == Approx(1.0).epsilon(1e-3));
    CHECK(disk.holds);
    double prev = 0;
    for (double w : {0.2, 0.1, 0.05}) {
        auto rep = necessity_check(fixtures::spike(0.5, w), Gauge::identity(), 128, 16, 3);
        CHECK(rep.holds);
        CHECK(rep.C_hat > prev);
        CHECK(rep.C_hat <= 1.5 * 32 * rep.lambda_hat * rep.lambda_hat);
        prev = rep.C_hat;
    }
    CHECK_THROWS_AS(necessity_check(fixtures::circle(), Gauge::power(0.5), 64), std::invalid_argument);
}
