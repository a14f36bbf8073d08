#include <numbers>

#include "doctest.h"
#include "qsdome/curve.hpp"
#include "qsdome/fixtures.hpp"
#include "test_util.hpp"

using namespace qsdome;
namespace fx = qsdome::fixtures;
constexpr double kPi = std::numbers::pi;

// Exhaustive oracle: every pair from a dense per-edge subdivision, exact subarc diameters.
static double brute_two_point(const JordanCurve& c, size_t per_edge) {
    std::vector<double> s;
    for (size_t e = 0; e < c.size(); ++e)
        for (size_t j = 0; j < per_edge; ++j)
            s.push_back(c.cumulative()[e] + c.edge_length(e) * static_cast<double>(j) / static_cast<double>(per_edge));
    double best = 1.0;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j) {
            auto x = c.at_arc(s[i]), y = c.at_arc(s[j]);
            double chord = dist(x.position, y.position);
            double d1 = point_set_diameter(c.arc_polyline(s[i], s[j]));
            double d2 = point_set_diameter(c.arc_polyline(s[j], s[i]));
            best = std::max(best, std::min(d1, d2) / chord);
        }
    return best;
}

static double brute_chord_arc(const JordanCurve& c, size_t per_edge) {
    std::vector<double> s;
    for (size_t e = 0; e < c.size(); ++e)
        for (size_t j = 0; j < per_edge; ++j)
            s.push_back(c.cumulative()[e] + c.edge_length(e) * static_cast<double>(j) / static_cast<double>(per_edge));
    double L = c.length(), best = 1.0;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j) {
            double chord = dist(c.at_arc(s[i]).position, c.at_arc(s[j]).position);
            double l = s[j] - s[i];
            best = std::max(best, std::min(l, L - l) / chord);
        }
    return best;
}

TEST_CASE("construction validates and normalizes orientation") {
    CHECK_THROWS_AS(JordanCurve({{0, 0}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(JordanCurve({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), std::invalid_argument);
    // bow tie
    CHECK_THROWS_AS(JordanCurve({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), std::invalid_argument);
    JordanCurve cw({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
    CHECK(cw.signed_area() == doctest::Approx(1.0));
    CHECK(polygon_signed_area(cw.vertices()) > 0);
}

TEST_CASE("arc length") {
    CHECK(arc_length(fx::circle(1.0, 4096)) == doctest::Approx(2 * kPi).epsilon(1e-4));
    CHECK(arc_length(fx::square(1.0)) == 4.0);
}

TEST_CASE("subarc selection") {
    auto c = fx::circle(1.0, 360);
    SUBCASE("antipodal tie picks lexicographically smaller midpoint") {
        auto x = c.point(0, 0.0), y = c.point(180, 0.0);
        auto arc = subarc(c, x, y);
        Vec2 mid = c.at_arc(c.arc_param(arc.start) + 0.5 * arc.length).position;
        CHECK(mid.y < 0);
        auto swapped = subarc(c, y, x);
        CHECK(swapped.length == doctest::Approx(arc.length));
        Vec2 mid2 = c.at_arc(c.arc_param(swapped.start) + 0.5 * swapped.length).position;
        CHECK(dist(mid, mid2) < 1e-12);
    }
    SUBCASE("60 degree arc") {
        auto x = c.point(10, 0.0), y = c.point(70, 0.0);
        auto arc = subarc(c, x, y);
        CHECK(arc.length == doctest::Approx(2 * 360 * std::sin(kPi / 360) / 6).epsilon(1e-12));
        CHECK(arc.diameter == doctest::Approx(dist(x.position, y.position)));
    }
    SUBCASE("square adjacent corners") {
        auto s = fx::square(1.0);
        auto arc = subarc(s, s.point(0, 0.0), s.point(1, 0.0));
        REQUIRE(arc.polyline.size() == 2);
        CHECK(arc.length == 1.0);
    }
    CHECK_THROWS_AS(subarc(c, c.point(3, 0.5), c.point(3, 0.5)), std::invalid_argument);
}

TEST_CASE("subarc partition and ordering invariants") {
    std::mt19937_64 rng(7);
    auto c = testutil::random_star(rng, 40);
    std::uniform_real_distribution<double> u(0.0, c.length());
    for (int k = 0; k < 200; ++k) {
        auto x = c.at_arc(u(rng)), y = c.at_arc(u(rng));
        if (dist(x.position, y.position) < 1e-9) continue;
        auto [a, b] = subarc_split(c, x, y);
        double chord = dist(x.position, y.position);
        CHECK(a.length + b.length == doctest::Approx(c.length()));
        CHECK(a.diameter <= b.diameter + 1e-12);
        CHECK(a.diameter >= chord - 1e-12);
        CHECK(a.length >= a.diameter - 1e-12);
        auto r = subarc(c, y, x);
        CHECK(r.length == doctest::Approx(a.length));
        CHECK(r.diameter == doctest::Approx(a.diameter));
    }
}

TEST_CASE("chordal flatness") {
    auto c = fx::circle(1.0, 4096);
    // chord of length 1 subtends 60 degrees
    auto x = c.at_arc(0.0), y = c.at_arc(c.length() / 6.0);
    CHECK(chordal_flatness(c, x, y) == doctest::Approx(1.0 - std::sqrt(3.0) / 2.0).epsilon(1e-3));
    auto sq = fx::square(1.0);
    CHECK(chordal_flatness(sq, sq.point(0, 0.1), sq.point(0, 0.7)) == 0.0);
    CHECK(chordal_flatness(sq, sq.point(0, 0.8), sq.point(1, 0.2)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("flatness profile") {
    auto c = fx::circle(1.0, 2048);
    auto prof = flatness_profile(c, {0.4, 0.2, 0.1});
    CHECK(prof.entries[2].envelope == doctest::Approx(0.1 / 8).epsilon(0.1));
    for (const auto& e : prof.entries) {
        CHECK(e.envelope >= e.shell);
        CHECK(e.shell >= 0.0);
        CHECK(std::isfinite(e.envelope));
    }
    auto sq = fx::square(1.0);
    auto p2 = flatness_profile(sq, {0.5, 0.25, 0.125});
    for (const auto& e : p2.entries) CHECK(e.envelope == doctest::Approx(0.5).epsilon(0.02));
    CHECK_FALSE(p2.estimate_trusted);
    auto big = flatness_profile(sq, {3.0, 1.0});
    CHECK(big.entries[0].exceeds_diameter);
    CHECK_THROWS_AS(flatness_profile(sq, {0.1, 0.2}), std::invalid_argument);
}

TEST_CASE("two-point constant oracles") {
    CHECK(two_point_constant(fx::circle(1.0, 2048)).value == doctest::Approx(1.0).epsilon(1e-3));
    // sup at x=(a,0), y=(1-a,1), a=(3-sqrt5)/2
    double a = (3.0 - std::sqrt(5.0)) / 2.0;
    double exact = std::sqrt(((1 - a) * (1 - a) + 1) / ((1 - 2 * a) * (1 - 2 * a) + 1));
    CHECK(exact == doctest::Approx(1.1441228).epsilon(1e-7));
    CHECK(two_point_constant(fx::square(1.0)).value == doctest::Approx(exact).epsilon(0.02));
    auto cusp = two_point_constant(fx::cusp(512));
    CHECK(std::isfinite(cusp.value));
    CHECK(cusp.value >= 1.0);
}

TEST_CASE("chord-arc constant oracles") {
    CHECK(chord_arc_constant(fx::circle(1.0, 2048)).value == doctest::Approx(kPi / 2).epsilon(0.01));
    CHECK(chord_arc_constant(fx::square(1.0)).value == doctest::Approx(2.0).epsilon(0.02));
    auto sq = fx::square(1.0);
    // points on one straight edge only
    SampleOptions o;
    CHECK(dist(sq.point(0, 0.2).position, sq.point(0, 0.6).position) == doctest::Approx(0.4));
    CHECK(chord_arc_constant(sq, 0.0, o).value >= 1.0);
}

TEST_CASE("estimators agree with exhaustive enumeration on small curves") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 3; ++trial) {
        auto c = testutil::random_star(rng, 24);
        double b2 = brute_two_point(c, 8);
        double est2 = two_point_constant(c, 1e-9).value;
        CHECK(est2 >= b2 * (1 - 1e-9));
        CHECK(est2 <= b2 * 1.02);
        double bc = brute_chord_arc(c, 8);
        double estc = chord_arc_constant(c, 1e-9).value;
        CHECK(estc >= bc * (1 - 1e-9));
        CHECK(estc <= bc * 1.02);
    }
}

TEST_CASE("similarity invariance") {
    std::mt19937_64 rng(3);
    auto c = fx::ellipse(1.0, 0.6, 256);
    for (int k = 0; k < 3; ++k) {
        auto sim = testutil::random_similarity(rng);
        auto d = testutil::transform(c, sim);
        auto x = c.point(5, 0.25), y = c.point(40, 0.5);
        auto xd = d.point(5, 0.25), yd = d.point(40, 0.5);
        CHECK(std::abs(chordal_flatness(c, x, y) - chordal_flatness(d, xd, yd)) < 1e-12);
        CHECK(std::abs(two_point_constant(c).value - two_point_constant(d).value) < 1e-12);
        CHECK(std::abs(chord_arc_constant(c).value - chord_arc_constant(d).value) < 1e-12);
        auto p = flatness_profile(c, {0.4, 0.2, 0.1});
        auto q = flatness_profile(d, {0.4 * sim.scale, 0.2 * sim.scale, 0.1 * sim.scale});
        for (size_t i = 0; i < 3; ++i) CHECK(std::abs(p.entries[i].envelope - q.entries[i].envelope) < 1e-12);
    }
}
