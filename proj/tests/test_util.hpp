#pragma once

#include <random>
#include <vector>

#include "qsdome/curve.hpp"

namespace testutil {

struct Similarity {
    double scale = 1.0;
    double angle = 0.0;
    qsdome::Vec2 shift;

    qsdome::Vec2 operator()(qsdome::Vec2 p) const {
        double c = std::cos(angle), s = std::sin(angle);
        return {scale * (c * p.x - s * p.y) + shift.x, scale * (s * p.x + c * p.y) + shift.y};
    }
};

inline Similarity random_similarity(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {0.25 + 3.0 * u(rng), 6.283185307179586 * u(rng), {10.0 * u(rng) - 5.0, 10.0 * u(rng) - 5.0}};
}

inline qsdome::JordanCurve transform(const qsdome::JordanCurve& c, const Similarity& s) {
    std::vector<qsdome::Vec2> v;
    for (auto p : c.vertices()) v.push_back(s(p));
    return qsdome::JordanCurve(std::move(v));
}

// Star-shaped random polygon around the origin.
inline qsdome::JordanCurve random_star(std::mt19937_64& rng, size_t n) {
    std::uniform_real_distribution<double> u(0.5, 1.5);
    std::vector<qsdome::Vec2> v;
    for (size_t i = 0; i < n; ++i) {
        double a = 6.283185307179586 * static_cast<double>(i) / static_cast<double>(n);
        double r = u(rng);
        v.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return qsdome::JordanCurve(std::move(v));
}

}  // namespace testutil

namespace testutil {

// Exact inner offset of a convex ccw polygon: clip by every edge's half-plane moved inward by eps.
inline std::vector<qsdome::Vec2> convex_inner_offset(const std::vector<qsdome::Vec2>& poly, double eps) {
    using qsdome::Vec2;
    std::vector<Vec2> cur = poly;
    size_t n = poly.size();
    for (size_t k = 0; k < n && !cur.empty(); ++k) {
        Vec2 a = poly[k], b = poly[(k + 1) % n];
        Vec2 d = (b - a) / qsdome::norm(b - a);
        Vec2 nrm{-d.y, d.x};
        auto f = [&](Vec2 p) { return qsdome::dot(p - a, nrm) - eps; };
        std::vector<Vec2> next;
        for (size_t i = 0; i < cur.size(); ++i) {
            Vec2 p = cur[i], q = cur[(i + 1) % cur.size()];
            double fp = f(p), fq = f(q);
            if (fp >= 0) next.push_back(p);
            if ((fp >= 0) != (fq >= 0)) next.push_back(qsdome::lerp(p, q, fp / (fp - fq)));
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace testutil
