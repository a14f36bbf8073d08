#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "qsdome/distance_levels.hpp"
#include "qsdome/fixtures.hpp"
#include "qsdome/surface.hpp"
#include "test_util.hpp"

using namespace qsdome;
using doctest::Approx;

namespace {

const double pi = std::numbers::pi;

void check_closed_sphere(const SurfaceMesh& m) {
    auto topo = mesh_topology(m);
    CHECK(topo.boundary_edges == 0);
    CHECK(topo.nonmanifold_edges == 0);
    CHECK(euler_characteristic(m) == 2);
    CHECK(m.volume() > 0);
}

}  // namespace

TEST_CASE("planar triangulation covers the domain") {
    for (auto c : {fixtures::circle(), fixtures::square(2.0), fixtures::dumbbell(), fixtures::spike()}) {
        PlanarMesh pm = triangulate_domain(c, 128);
        CHECK(pm.area() == Approx(c.signed_area()).epsilon(1e-9));
        for (const auto& t : pm.triangles) CHECK(orient(pm.points[t[0]], pm.points[t[1]], pm.points[t[2]]) > 0);
        // curve vertices are mesh vertices, in order
        for (size_t i = 0; i < c.size(); i += 97) CHECK(std::find(pm.points.begin(), pm.points.end(), c.vertex(i)) != pm.points.end());
    }
}

TEST_CASE("ear clipping of a nonconvex polygon") {
    std::vector<Vec2> p{{0, 0}, {4, 0}, {4, 4}, {2, 1}, {0, 4}};
    std::vector<std::array<uint32_t, 3>> t;
    ear_clip(p, {0, 1, 2, 3, 4}, t);
    REQUIRE(t.size() == 3);
    double a = 0;
    for (auto& f : t) a += 0.5 * orient(p[f[0]], p[f[1]], p[f[2]]);
    CHECK(a == Approx(polygon_signed_area(p)));
}

TEST_CASE("double cone over the disk") {
    auto m = build_surface(fixtures::circle(), Gauge::identity(), 512);
    CHECK(m.area() == Approx(2 * std::sqrt(2.0) * pi).epsilon(0.01));
    check_closed_sphere(m);
    double zmax = 0;
    for (auto& v : m.vertices) zmax = std::max(zmax, v.z);
    CHECK(zmax == Approx(1.0).epsilon(1e-3));
}

TEST_CASE("double hip roof over the square") {
    auto sq = fixtures::square(2.0);
    auto m = build_surface(sq, Gauge::identity(), 512);
    CHECK(m.area() == Approx(8 * std::sqrt(2.0)).epsilon(0.01));
    check_closed_sphere(m);
    CHECK(m.volume() == Approx(8.0 / 3.0).epsilon(0.01));
}

TEST_CASE("closure and Euler characteristic across fixtures") {
    std::vector<std::pair<JordanCurve, Gauge>> cases{
        {fixtures::circle(), Gauge::power(0.5)},
        {fixtures::ellipse(1.0, 0.4), Gauge::identity()},
        {fixtures::dumbbell(), Gauge::power(0.5)},
        {fixtures::spike(0.5, 0.05), Gauge::identity()},
        {fixtures::regular_polygon(6), Gauge::counterexample()},
        {fixtures::cusp(), Gauge::identity()},
    };
    for (auto& [c, g] : cases) check_closed_sphere(build_surface(c, g, 192));
}

TEST_CASE("mirror symmetry, equator and heights") {
    auto c = fixtures::ellipse(1.0, 0.6);
    auto g = Gauge::power(0.5);
    auto m = build_surface(c, g, 256);
    std::vector<std::array<double, 3>> up, down;
    for (auto& v : m.vertices) {
        up.push_back({v.x, v.y, v.z});
        down.push_back({v.x, v.y, -v.z});
    }
    std::sort(up.begin(), up.end());
    std::sort(down.begin(), down.end());
    REQUIRE(up.size() == down.size());
    double worst = 0;
    for (size_t i = 0; i < up.size(); ++i)
        for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(up[i][k] - down[i][k]));
    CHECK(worst <= 1e-12);

    // equator is the curve itself: every curve vertex appears, every equator vertex lies on the curve
    std::vector<Vec2> eq;
    for (size_t i = 0; i < m.vertices.size(); ++i)
        if (m.tags[i] == VertexTag::equator) {
            eq.push_back(m.planar[i]);
            CHECK(m.vertices[i].z == 0.0);
        }
    for (size_t i = 0; i < c.size(); ++i) CHECK(std::find(eq.begin(), eq.end(), c.vertex(i)) != eq.end());
    double ztol = 0.0, dtol = 0.0;
    DistanceField f(c, 256);
    double r = inradius(f).radius;
    double zmax = 0.0;
    for (size_t i = 0; i < m.vertices.size(); ++i) {
        double d = c.distance(m.planar[i]);
        dtol = std::max(dtol, std::abs(d - m.boundary_distance[i]));
        double want = (m.tags[i] == VertexTag::lower ? -1 : 1) * g(m.boundary_distance[i]);
        ztol = std::max(ztol, std::abs(m.vertices[i].z - want));
        zmax = std::max(zmax, m.vertices[i].z);
        if (m.tags[i] == VertexTag::equator) CHECK(d <= 1e-12);
    }
    CHECK(ztol == 0.0);
    CHECK(dtol <= 1e-12);
    CHECK(zmax == Approx(g(r)).epsilon(1e-12));
}

TEST_CASE("area is stable under refinement for Lipschitz gauges") {
    for (auto c : {fixtures::circle(), fixtures::ellipse(1.0, 0.5), fixtures::dumbbell()}) {
        double a1 = build_surface(c, Gauge::identity(), 256).area();
        double a2 = build_surface(c, Gauge::identity(), 512).area();
        CHECK(std::abs(a2 - a1) / a2 <= 0.01);
    }
}

TEST_CASE("lift") {
    auto disk = fixtures::circle();
    auto g = Gauge::identity();
    auto seg = lift(disk, g, {{0, 0}, {0.5, 0}, {1, 0}}, 1);
    CHECK(seg[0].z == Approx(1.0).epsilon(1e-5));
    CHECK(seg[1].z == Approx(0.5).epsilon(1e-5));
    CHECK(seg[2].z == Approx(0.0));
    auto eq = lift(disk, g, disk.vertices(), -1);
    for (size_t i = 0; i < eq.size(); ++i) {
        CHECK(eq[i].z == 0.0);
        CHECK(eq[i].x == disk.vertex(i).x);
    }
    auto lvl = extract_level_set(disk, 0.3, 512);
    auto lifted = lift(disk, Gauge::power(2.0), lvl.components[0], 1);
    for (auto& p : lifted) CHECK(p.z == Approx(0.09).epsilon(0.05));
    // projection of a lift is the identity
    for (size_t i = 0; i < lifted.size(); ++i) {
        CHECK(lifted[i].x == lvl.components[0][i].x);
        CHECK(lifted[i].y == lvl.components[0][i].y);
    }
    CHECK_THROWS_AS(lift(disk, g, {{1.5, 0}}, 1), std::domain_error);
}

TEST_CASE("cone region volume") {
    auto disk = cone_region(fixtures::circle(), 512);
    CHECK(disk.volume == Approx(2 * pi / 3).epsilon(0.02));
    CHECK(disk.mesh_volume == Approx(2 * pi / 3).epsilon(0.02));
    auto sq = cone_region(fixtures::square(2.0), 512);
    CHECK(sq.volume == Approx(8.0 / 3.0).epsilon(0.01));
    CHECK(sq.mesh_volume == Approx(sq.volume).epsilon(0.01));
    auto sliver = cone_region(JordanCurve({{0, 0}, {1, 0}, {1, 0.01}, {0, 0.01}}), 512);
    CHECK(sliver.volume < 1e-4);
}

TEST_CASE("slit complement map") {
    auto disk = fixtures::circle(1.0, 4096);
    HeightFunction h1 = [&](Vec2 x) { return disk.contains(x) ? disk.distance(x) : 0.0; };
    HeightFunction h2 = [&](Vec2 x) { return -h1(x); };
    Vec3 p = slit_complement_map(disk, h1, h2, {0, 0, 0.5});
    CHECK(p.x == 0.0);
    CHECK(p.z == Approx(1.5).epsilon(1e-6));
    Vec3 out{2, 0, 0.3};
    CHECK(slit_complement_map(disk, h1, h2, out) == out);
    CHECK(slit_complement_map(disk, h1, h2, {2, 0, 0}) == Vec3{2, 0, 0});
    CHECK_THROWS_AS(slit_complement_map(disk, h1, h2, {0.2, 0, 0}), std::domain_error);
    CHECK_THROWS_AS(slit_complement_map(disk, h2, h1, {0.2, 0, 0.1}), std::invalid_argument);
    // one-sided limits across the slit
    Vec3 above = slit_complement_map(disk, h1, h2, {0.2, 0.1, 1e-12});
    Vec3 below = slit_complement_map(disk, h1, h2, {0.2, 0.1, -1e-12});
    CHECK(above.z - below.z == Approx(2 * h1({0.2, 0.1})).epsilon(1e-9));
    // h1 is 1-Lipschitz
    auto bl = slit_bilipschitz(disk, h1, h2, 0.05, 20000, 7);
    CHECK(bl.pairs == 20000);
    CHECK(bl.constant <= 3.0);
    CHECK(bl.constant > 1.0);
}

TEST_CASE("t3 bisection") {
    CHECK(solve_t3(Gauge::identity(), 0.3, 0.2) == Approx(0.25).epsilon(1e-12));
    CHECK(solve_t3(Gauge::power(2.0), 0.4, 0.2) == Approx((-1 + std::sqrt(2.6)) / 2).epsilon(1e-12));
    CHECK(solve_t3(Gauge::power(2.0), 0.4, 0.2) == Approx(0.3062258).epsilon(1e-6));
    CHECK_THROWS_AS(solve_t3(Gauge::identity(), 0.2, 0.3), std::invalid_argument);
}

TEST_CASE("square piece on the disk cone") {
    auto disk = fixtures::circle();
    auto g = Gauge::identity();
    // chord 0.3 on the circle of radius 0.7
    double w = 0.7 * std::asin(0.3 / 1.4);
    auto sp = square_piece(disk, g, 0.3, 0.26, {0.7, 0.0}, w);
    CHECK(dist(sp.x1, sp.y1) == Approx(0.3).epsilon(2e-3));
    CHECK(sp.x1.z == Approx(0.3).epsilon(1e-3));
    CHECK(sp.x2.z == Approx(0.26).epsilon(1e-3));
    CHECK(sp.t3 == Approx(0.28));
    CHECK(sp.C0 == Approx(1.0).epsilon(0.01));
    for (auto& c : sp.checks) CHECK(c.ok);
    auto a = square_piece_area(sp);
    double theta = 2 * w / 0.7;
    double oracle = std::sqrt(2.0) * 0.5 * theta * (0.74 * 0.74 - 0.7 * 0.7);
    CHECK(a.area == Approx(oracle).epsilon(0.02));
    CHECK(a.ratio >= 0.1);
    CHECK(a.ratio <= 10.0);
    // rough center is on the middle level at the angular midpoint
    CHECK(std::hypot(sp.rough_center.x, sp.rough_center.y) == Approx(0.72).epsilon(2e-3));
    CHECK(std::atan2(sp.rough_center.y, sp.rough_center.x) == Approx(theta / 2).epsilon(0.02));
    CHECK(sp.center_ratio_min > 0.05);
    CHECK(sp.center_ratio_max <= 1.0);
    auto topo = mesh_topology(sp.patch);
    CHECK(topo.nonmanifold_edges == 0);
    CHECK(topo.boundary_edges > 0);
}

TEST_CASE("square piece area stays comparable along a level ladder") {
    auto disk = fixtures::circle();
    auto g = Gauge::identity();
    for (double t2 : {0.26, 0.27, 0.28, 0.29}) {
        double w = 0.7 * std::asin(0.3 / 1.4);
        auto sp = square_piece(disk, g, 0.3, t2, {0.7, 0.0}, w);
        auto a = square_piece_area(sp);
        // area ~ sqrt2 |x1-y1| (t1-t2) and (iv) bounds t1-t2 below by |x1-y1| / (40 C0)
        CHECK(a.ratio >= 0.95 / (20 * std::sqrt(2.0) * sp.C0));
        CHECK(a.ratio <= 1.0);
    }
}

TEST_CASE("square piece admissibility failures") {
    auto disk = fixtures::circle();
    auto g = Gauge::identity();
    auto clause_of = [&](double t1, double t2, double w) {
        try {
            square_piece(disk, g, t1, t2, {0.7, 0.0}, w);
        } catch (const AdmissibilityError& e) {
            return e.clause();
        }
        return std::string("none");
    };
    CHECK(clause_of(0.3, 0.2, 0.05) == "iii");   // t1 - t2 > |x1 - y1| / 3
    CHECK(clause_of(0.3, 0.29, 0.6) == "iii");   // too wide for diam / (10 C0)
    CHECK(clause_of(0.3, 0.299, 0.15) == "iv");  // increment below the lower bound
    CHECK(clause_of(0.3, 0.26, 0.15) == "none");
}

TEST_CASE("mesh export") {
    auto m = build_surface(fixtures::square(1.0), Gauge::identity(), 16);
    std::ostringstream obj, ply;
    write_obj(m, obj);
    write_ply(m, ply);
    std::string s = obj.str();
    CHECK(static_cast<size_t>(std::count(s.begin(), s.end(), '\n')) == 1 + m.vertices.size() + m.triangles.size());
    CHECK(ply.str().rfind("ply\nformat ascii 1.0\n", 0) == 0);
    auto sph = sphere_mesh(1.0, 3);
    check_closed_sphere(sph);
    CHECK(sph.area() == Approx(4 * pi).epsilon(0.02));
}

TEST_CASE("random star domains lift to closed spheres") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 12; ++trial) {
        auto c = testutil::random_star(rng, 64 + 16 * trial);
        auto m = build_surface(c, Gauge::power(0.5), 96 + 16 * trial);
        check_closed_sphere(m);
    }
}
