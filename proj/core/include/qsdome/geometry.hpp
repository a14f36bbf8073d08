#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace qsdome {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    bool operator==(const Vec2&) const = default;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(Vec3 o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(Vec3 o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    bool operator==(const Vec3&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }
inline double dist2(Vec2 a, Vec2 b) {
    Vec2 d = a - b;
    return dot(d, d);
}
inline Vec2 lerp(Vec2 a, Vec2 b, double t) { return a + (b - a) * t; }
// > 0 when c lies left of a->b
inline double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline double dist(Vec3 a, Vec3 b) { return norm(a - b); }
inline double dist2(Vec3 a, Vec3 b) {
    Vec3 d = a - b;
    return dot(d, d);
}

// Parameter in [0,1] of the point of [a,b] closest to p.
inline double closest_param(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 d = b - a;
    double dd = dot(d, d);
    if (dd == 0.0) return 0.0;
    return std::clamp(dot(p - a, d) / dd, 0.0, 1.0);
}

inline double point_segment_dist2(Vec2 p, Vec2 a, Vec2 b) {
    return dist2(p, lerp(a, b, closest_param(p, a, b)));
}

inline double point_segment_dist(Vec2 p, Vec2 a, Vec2 b) {
    return std::sqrt(point_segment_dist2(p, a, b));
}

inline double point_segment_dist(Vec3 p, Vec3 a, Vec3 b) {
    Vec3 d = b - a;
    double dd = dot(d, d);
    double t = dd == 0.0 ? 0.0 : std::clamp(dot(p - a, d) / dd, 0.0, 1.0);
    return dist(p, a + d * t);
}

// Distance from p to the infinite line through a,b.
inline double point_line_dist(Vec2 p, Vec2 a, Vec2 b) {
    double l = dist(a, b);
    if (l == 0.0) return dist(p, a);
    return std::abs(orient(a, b, p)) / l;
}

// Closed segments [a,b] and [c,d] share at least one point.
bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

double segment_segment_dist(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

struct BBox {
    Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Vec2 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

    void add(Vec2 p) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
    double dist2(Vec2 p) const {
        double dx = std::max({lo.x - p.x, 0.0, p.x - hi.x});
        double dy = std::max({lo.y - p.y, 0.0, p.y - hi.y});
        return dx * dx + dy * dy;
    }
};

double polygon_signed_area(const std::vector<Vec2>& pts);

std::vector<Vec2> convex_hull(std::vector<Vec2> pts);

// Diameter of a point set: hull plus rotating calipers.
double point_set_diameter(const std::vector<Vec2>& pts);

// Even-odd containment for a closed polygon.
bool point_in_polygon(const std::vector<Vec2>& poly, Vec2 p);

// Area of triangle(a,b,c) intersected with the disk of radius r at the origin (planar).
double triangle_disk_area(Vec2 a, Vec2 b, Vec2 c, double r);

// Area of a 3D triangle inside the ball B(center, r).
double triangle_ball_area(Vec3 a, Vec3 b, Vec3 c, Vec3 center, double r);

}  // namespace qsdome
