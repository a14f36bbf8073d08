#include "qsdome/geometry.hpp"

#include <numbers>

namespace qsdome {

namespace {

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

int sign(double v) { return (v > 0) - (v < 0); }

// Signed area of disk(0,r) intersected with triangle (0,a,b).
double wedge_disk_area(Vec2 a, Vec2 b, double r) {
    double r2 = r * r;
    auto sector = [&](Vec2 u, Vec2 v) { return 0.5 * r2 * std::atan2(cross(u, v), dot(u, v)); };
    bool ain = dot(a, a) <= r2;
    bool bin = dot(b, b) <= r2;
    if (ain && bin) return 0.5 * cross(a, b);

    Vec2 d = b - a;
    double A = dot(d, d);
    double B = 2.0 * dot(a, d);
    double C = dot(a, a) - r2;
    double disc = B * B - 4.0 * A * C;
    if (A == 0.0) return 0.0;
    if (disc <= 0.0) return sector(a, b);
    double sq = std::sqrt(disc);
    double t1 = (-B - sq) / (2.0 * A);
    double t2 = (-B + sq) / (2.0 * A);
    if (ain) {
        Vec2 p = a + d * std::clamp(t2, 0.0, 1.0);
        return 0.5 * cross(a, p) + sector(p, b);
    }
    if (bin) {
        Vec2 p = a + d * std::clamp(t1, 0.0, 1.0);
        return sector(a, p) + 0.5 * cross(p, b);
    }
    if (t1 > 0.0 && t2 < 1.0 && t1 < t2) {
        Vec2 p1 = a + d * t1;
        Vec2 p2 = a + d * t2;
        return sector(a, p1) + 0.5 * cross(p1, p2) + sector(p2, b);
    }
    return sector(a, b);
}

// Orientation sign with near-collinear triples (relative 1e-12) snapped to zero.
int orient_sign(Vec2 a, Vec2 b, Vec2 c) {
    double o = orient(a, b, c);
    double scale = norm(b - a) * std::max(norm(c - a), norm(c - b));
    return std::abs(o) <= 1e-12 * scale ? 0 : sign(o);
}

}  // namespace

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    int o1 = orient_sign(a, b, c);
    int o2 = orient_sign(a, b, d);
    int o3 = orient_sign(c, d, a);
    int o4 = orient_sign(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

double segment_segment_dist(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    if (segments_intersect(a, b, c, d)) return 0.0;
    return std::sqrt(std::min({point_segment_dist2(a, c, d), point_segment_dist2(b, c, d),
                               point_segment_dist2(c, a, b), point_segment_dist2(d, a, b)}));
}

double polygon_signed_area(const std::vector<Vec2>& pts) {
    double s = 0.0;
    size_t n = pts.size();
    for (size_t i = 0; i < n; ++i) s += cross(pts[i], pts[(i + 1) % n]);
    return 0.5 * s;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Vec2> h(2 * pts.size());
    size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && orient(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

double point_set_diameter(const std::vector<Vec2>& pts) {
    if (pts.size() < 2) return 0.0;
    auto h = convex_hull(pts);
    size_t n = h.size();
    if (n == 1) return 0.0;
    if (n == 2) return dist(h[0], h[1]);
    double best = 0.0;
    size_t j = 1;
    for (size_t i = 0; i < n; ++i) {
        size_t ni = (i + 1) % n;
        while (std::abs(orient(h[i], h[ni], h[(j + 1) % n])) > std::abs(orient(h[i], h[ni], h[j])))
            j = (j + 1) % n;
        best = std::max({best, dist(h[i], h[j]), dist(h[ni], h[j])});
    }
    return best;
}

bool point_in_polygon(const std::vector<Vec2>& poly, Vec2 p) {
    bool in = false;
    size_t n = poly.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            double x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < x) in = !in;
        }
    }
    return in;
}

double triangle_disk_area(Vec2 a, Vec2 b, Vec2 c, double r) {
    if (r <= 0.0) return 0.0;
    double s = wedge_disk_area(a, b, r) + wedge_disk_area(b, c, r) + wedge_disk_area(c, a, r);
    return std::abs(s);
}

double triangle_ball_area(Vec3 a, Vec3 b, Vec3 c, Vec3 center, double r) {
    double r2 = r * r;
    Vec3 n = cross(b - a, c - a);
    double nn = norm(n);
    if (nn == 0.0) return 0.0;
    if (dist2(a, center) <= r2 && dist2(b, center) <= r2 && dist2(c, center) <= r2) return 0.5 * nn;
    Vec3 u = n * (1.0 / nn);
    double s = dot(center - a, u);
    if (std::abs(s) >= r) return 0.0;
    double rho = std::sqrt(r2 - s * s);
    Vec3 q = center - u * s;
    Vec3 e1 = b - a;
    e1 = e1 * (1.0 / norm(e1));
    Vec3 e2 = cross(u, e1);
    auto proj = [&](Vec3 p) {
        Vec3 d = p - q;
        return Vec2{dot(d, e1), dot(d, e2)};
    };
    return triangle_disk_area(proj(a), proj(b), proj(c), rho);
}

}  // namespace qsdome
