#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "qsdome/cone_map.hpp"

using namespace qsdome;
using doctest::Approx;

TEST_CASE("boundary distance oracles") {
    CHECK(boundary_distance(ConformalMap::identity(), 0.0) == Approx(1.0).epsilon(1e-12));
    CHECK(boundary_distance(ConformalMap::quadratic(0.3), 0.0) == Approx(0.7).epsilon(1e-12));
    CHECK(boundary_distance(ConformalMap::moebius(0.5), 0.0) == Approx(0.5).epsilon(1e-12));
    // identity: 1 - |x| everywhere
    for (cplx x : koebe_samples(50)) CHECK(boundary_distance(ConformalMap::identity(), x) == Approx(1 - std::abs(x)).epsilon(1e-10));
    // automorphisms keep the disk: dist = 1 - |f(x)|
    auto m = ConformalMap::moebius(cplx(0.6, -0.6));
    for (cplx x : koebe_samples(50)) CHECK(boundary_distance(m, x) == Approx(1 - std::abs(m.f(x))).epsilon(1e-8));
    CHECK_THROWS_AS(boundary_distance(ConformalMap::identity(), 1.0), std::domain_error);
}

TEST_CASE("map evaluators") {
    auto q = ConformalMap::quadratic(0.3);
    CHECK(std::abs(q.f(0.5) - cplx(0.575, 0)) < 1e-15);
    CHECK(std::abs(ConformalMap::moebius(0.5).df(0.0) - cplx(0.75, 0)) < 1e-15);
    // derivative of every registry map against a central difference
    for (const auto& m : map_registry())
        for (cplx z : koebe_samples(20, 0.9)) {
            double h = 1e-6;
            cplx fd = (m.f(z + h) - m.f(z - h)) / (2 * h);
            CHECK(std::abs(fd - m.df(z)) <= 1e-7 * std::max(1.0, std::abs(m.df(z))));
        }
    CHECK_THROWS_AS(ConformalMap::quadratic(0.6), std::invalid_argument);
    CHECK_THROWS_AS(ConformalMap::moebius(1.0), std::invalid_argument);
    CHECK_THROWS_AS(ConformalMap::compose({ConformalMap::quadratic(0.2), ConformalMap::moebius(0.3)}), std::invalid_argument);
    auto c = ConformalMap::parse("moebius:0.5>quadratic:0.2");
    CHECK(c.kind() == MapKind::composition);
    CHECK(std::abs(c.f(0.1) - ConformalMap::quadratic(0.2).f(ConformalMap::moebius(0.5).f(0.1))) < 1e-15);
    CHECK(ConformalMap::parse(c.describe()).describe() == c.describe());
    CHECK_THROWS_AS(ConformalMap::parse("spiral:1"), std::invalid_argument);
}

TEST_CASE("Koebe inequalities over the registry") {
    auto samples = koebe_samples(1000, 0.99);
    for (const auto& m : map_registry()) {
        auto rep = koebe_check(m, samples);
        CHECK(rep.samples == 1000);
        CHECK(rep.passed());
        CHECK(rep.min_lower_margin >= 1.0);
        CHECK(rep.min_upper_margin >= 1.0);
    }
    // examples at the origin
    auto q = koebe_check(ConformalMap::quadratic(0.3), {0.0});
    CHECK(q.min_lower_margin == Approx(1.0 / 0.7));
    CHECK(q.min_upper_margin == Approx(2.8));
    auto mb = koebe_check(ConformalMap::moebius(0.5), {0.0});
    CHECK(mb.min_lower_margin == Approx(0.75 / 0.5));
    CHECK(mb.min_upper_margin == Approx(2.0 / 0.75));
}

TEST_CASE("dome map") {
    auto q = ConformalMap::quadratic(0.3);
    Vec3 w = dome_map(q, {0, 0, 0.5});
    CHECK(w.x == Approx(0.0));
    CHECK(w.z == Approx(0.35).epsilon(1e-12));
    Vec3 p{0.3, -0.2, 0.1};
    CHECK(dist(dome_map(ConformalMap::identity(), p), p) <= 1e-12);
    CHECK_THROWS_AS(dome_map(q, {0.5, 0, 0.5}), std::domain_error);
    // z = 0 reproduces f; every image lies strictly inside the cone over f(disk)
    for (const auto& m : map_registry())
        for (cplx x : koebe_samples(100, 0.95)) {
            Vec3 base = dome_map(m, {x.real(), x.imag(), 0.0});
            CHECK(std::abs(cplx(base.x, base.y) - m.f(x)) <= 1e-15);
            CHECK(base.z == 0.0);
            double lim = 1 - std::abs(x);
            Vec3 top = dome_map(m, {x.real(), x.imag(), 0.999 * lim});
            CHECK(std::abs(top.z) < boundary_distance(m, x));
        }
    // apex limit approaches the boundary distance
    Vec3 apex = dome_map(q, {0, 0, 1 - 1e-12});
    CHECK(apex.z == Approx(0.7).epsilon(1e-9));
}

TEST_CASE("derivative of D on Whitney balls") {
    std::vector<cplx> bases{0.0, 0.5, 0.9, 0.99};
    auto id = dd_check(ConformalMap::identity(), bases);
    CHECK(id.sup <= 1e-9);
    auto q = dd_check(ConformalMap::quadratic(0.3), bases);
    CHECK(std::isfinite(q.sup));
    CHECK(q.sup > 0);
    CHECK(q.stable());
    auto mb = dd_check(ConformalMap::moebius(0.9), bases);
    CHECK(std::isfinite(mb.sup));
    CHECK(mb.stable());
    // post-composition with a similarity leaves the ratio unchanged
    auto sim = ConformalMap::compose({ConformalMap::quadratic(0.3), ConformalMap::affine(cplx(2.5, -1.0), cplx(3.0, 4.0))});
    auto qs = dd_check(sim, bases);
    for (size_t b = 0; b < bases.size(); ++b)
        CHECK(std::abs(qs.balls[b].value - q.balls[b].value) <= 1e-9 * std::max(1.0, q.balls[b].value));
    CHECK_THROWS_AS(dd_check(ConformalMap::identity(), {1.0}), std::domain_error);
}

TEST_CASE("dilatation on Whitney balls") {
    std::vector<cplx> bases{0.0, 0.5, 0.9, 0.99};
    auto id = dilatation_estimate(ConformalMap::identity(), bases);
    CHECK(id.sup == Approx(1.0).epsilon(1e-9));
    CHECK(id.local_sup == Approx(1.0).epsilon(1e-6));
    auto q = dilatation_estimate(ConformalMap::quadratic(0.3), bases);
    for (const auto& b : q.balls) {
        CHECK(b.value >= 1.0);
        CHECK(b.value <= 4.0);
        CHECK(b.local >= 1.0);
        CHECK(b.local <= 4.0);
    }
    // distortion tends to 1 where the map is nearly affine at Whitney scale
    CHECK(q.balls.back().value < q.balls.front().value);
    auto comp = dilatation_estimate(map_registry().back(), bases);
    CHECK(std::isfinite(comp.sup));
    CHECK(comp.sup >= 1.0);
}
