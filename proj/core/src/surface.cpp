#include "qsdome/surface.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <random>

#include "qsdome/distance_levels.hpp"

namespace qsdome {

SurfaceMesh lift_planar_mesh(const PlanarMesh& planar, const Gauge& gauge) {
    SurfaceMesh m;
    size_t n = planar.points.size();
    std::vector<uint32_t> up(n), down(n);
    auto add = [&](Vec2 p, double d, double z, VertexTag tag) {
        auto id = static_cast<uint32_t>(m.vertices.size());
        m.vertices.push_back({p.x, p.y, z});
        m.planar.push_back(p);
        m.boundary_distance.push_back(d);
        m.tags.push_back(tag);
        return id;
    };
    for (size_t i = 0; i < n; ++i) {
        double d = planar.boundary_distance[i];
        if (planar.on_boundary[i]) up[i] = down[i] = add(planar.points[i], 0.0, 0.0, VertexTag::equator);
        else up[i] = add(planar.points[i], d, gauge(d), VertexTag::upper);
    }
    for (size_t i = 0; i < n; ++i)
        if (!planar.on_boundary[i]) {
            double d = planar.boundary_distance[i];
            down[i] = add(planar.points[i], d, -gauge(d), VertexTag::lower);
        }
    m.triangles.reserve(2 * planar.triangles.size());
    for (const auto& t : planar.triangles) m.triangles.push_back({up[t[0]], up[t[1]], up[t[2]]});
    for (const auto& t : planar.triangles) m.triangles.push_back({down[t[0]], down[t[2]], down[t[1]]});
    return m;
}

SurfaceMesh build_surface(const JordanCurve& curve, const Gauge& gauge, size_t resolution) {
    return lift_planar_mesh(triangulate_domain(curve, resolution, true), gauge);
}

std::vector<Vec3> lift(const JordanCurve& curve, const Gauge& gauge, const std::vector<Vec2>& polyline, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("lift sign must be +1 or -1");
    double tol = 1e-12 * curve.diameter();
    std::vector<Vec3> out;
    out.reserve(polyline.size());
    for (Vec2 p : polyline) {
        double d = curve.distance(p);
        if (!curve.contains(p) && d > tol) throw std::domain_error("lift: point outside the closed domain");
        out.push_back({p.x, p.y, sign * gauge(d)});
    }
    return out;
}

ConeRegion cone_region(const JordanCurve& curve, size_t resolution) {
    ConeRegion out;
    DistanceField field(curve, resolution);
    double h = field.grid().h;
    // Layer areas are h^2 * #{nodes with d > z}; integrating over z gives h^2 * sum(d).
    double s = 0.0;
    for (double v : field.values())
        if (v > 0) s += v;
    out.volume = 2.0 * h * h * s;
    out.mesh = build_surface(curve, Gauge::identity(), resolution);
    out.mesh_volume = out.mesh.volume();
    return out;
}

Vec3 slit_complement_map(const JordanCurve& domain, const HeightFunction& h1, const HeightFunction& h2, Vec3 p) {
    Vec2 x{p.x, p.y};
    bool over = domain.contains(x) || domain.distance(x) <= 1e-12 * domain.diameter();
    if (!over) return p;
    if (p.z == 0.0) throw std::domain_error("slit map undefined on the slit");
    double a = h1(x), b = h2(x);
    if (b > a + 1e-12 * (1.0 + std::abs(a))) throw std::invalid_argument("slit map requires h2 <= h1");
    return {p.x, p.y, p.z + (p.z > 0 ? a : b)};
}

BiLipschitzSample slit_bilipschitz(const JordanCurve& domain, const HeightFunction& h1, const HeightFunction& h2,
                                   double scale, size_t pairs, uint64_t seed) {
    std::mt19937_64 rng(seed);
    const BBox& b = domain.bbox();
    double pad = 0.25 * domain.diameter();
    std::uniform_real_distribution<double> ux(b.lo.x - pad, b.hi.x + pad), uy(b.lo.y - pad, b.hi.y + pad);
    std::uniform_real_distribution<double> uz(-domain.diameter(), domain.diameter());
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    BiLipschitzSample out;
    while (out.pairs < pairs) {
        Vec3 p{ux(rng), uy(rng), uz(rng)};
        Vec3 dir{gauss(rng), gauss(rng), gauss(rng)};
        double nd = norm(dir);
        if (nd == 0.0 || p.z == 0.0) continue;
        Vec3 q = p + dir * (scale * ur(rng) / nd);
        if (q.z == 0.0 || (q.z > 0) != (p.z > 0) || dist(p, q) == 0.0) continue;
        Vec3 hp = slit_complement_map(domain, h1, h2, p), hq = slit_complement_map(domain, h1, h2, q);
        double a = dist(hp, hq) / dist(p, q);
        double r = std::max(a, 1.0 / a);
        ++out.pairs;
        if (r > out.constant) {
            out.constant = r;
            out.witness_p = p;
            out.witness_q = q;
        }
    }
    return out;
}

double solve_t3(const Gauge& gauge, double t1, double t2) {
    if (!(t2 < t1) || t2 < 0) throw std::invalid_argument("solve_t3 requires 0 <= t2 < t1");
    double target = 0.5 * (t1 - t2 + gauge(t1) - gauge(t2));
    double lo = t2, hi = t1;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * t1; ++it) {
        double mid = 0.5 * (lo + hi);
        double f = mid - t2 + gauge(mid) - gauge(t2) - target;
        (f < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

JordanCurve level_curve(const DistanceField& field, double t, const char* which) {
    if (t == 0.0) return field.curve();
    LevelSet ls = extract_level_set(field, t);
    if (ls.classification != LevelClass::jordan)
        throw AdmissibilityError("i", std::string("level curve at ") + which + " is " + to_string(ls.classification));
    return JordanCurve(ls.components.front());
}

void append_dedup(std::vector<Vec2>& out, const std::vector<Vec2>& pts, double tol) {
    for (Vec2 p : pts)
        if (out.empty() || dist(out.back(), p) > tol) out.push_back(p);
}

}  // namespace

SquarePiece square_piece(const JordanCurve& curve, const Gauge& gauge, double t1, double t2, Vec2 anchor,
                         double half_width, const SquarePieceOptions& opt) {
    if (!(t2 < t1) || t2 < 0) throw AdmissibilityError("i", "levels must satisfy 0 <= t2 < t1");
    if (!(half_width > 0)) throw AdmissibilityError("iii", "half-width must be positive");
    SquarePiece sp;
    sp.t1 = t1;
    sp.t2 = t2;
    DistanceField field(curve, opt.resolution);
    double tol = 2.0 * field.cell_diagonal();
    JordanCurve g1 = level_curve(field, t1, "t1");
    JordanCurve g2 = level_curve(field, t2, "t2");

    CurvePoint cx1 = g1.closest(anchor);
    double sx1 = g1.arc_param(cx1);
    double sy1 = sx1 + 2.0 * half_width;
    if (2.0 * half_width >= 0.5 * g1.length()) throw AdmissibilityError("iii", "half-width exceeds a quarter of the level curve");
    sp.px1 = cx1.position;
    sp.py1 = g1.at_arc(sy1).position;
    CurvePoint cx2 = g2.closest(sp.px1), cy2 = g2.closest(sp.py1);
    sp.px2 = cx2.position;
    sp.py2 = cy2.position;

    sp.C0 = opt.C0 > 0 ? opt.C0 : std::max(two_point_constant(g1).value, two_point_constant(g2).value);

    double chord = dist(sp.px1, sp.py1);
    double delta = t1 - t2 + gauge(t1) - gauge(t2);
    auto check = [&](std::string clause, bool ok, double lhs, double rhs, std::string detail) {
        sp.checks.push_back({clause, ok, lhs, rhs, detail});
        if (!ok) throw AdmissibilityError(clause, "clause (" + clause + ") violated: " + detail);
    };
    double err_i = std::max({std::abs(curve.distance(sp.px1) - t1), std::abs(curve.distance(sp.py1) - t1),
                             std::abs(curve.distance(sp.px2) - t2), std::abs(curve.distance(sp.py2) - t2)});
    check("i", err_i <= tol, err_i, tol, "level membership error");
    double err_ii = std::max(std::abs(dist(sp.px1, sp.px2) - (t1 - t2)), std::abs(dist(sp.py1, sp.py2) - (t1 - t2)));
    check("ii", err_ii <= tol, err_ii, tol, "nearest-point segment length differs from t1 - t2");
    check("iii", t1 - t2 <= chord / 3.0, t1 - t2, chord / 3.0, "t1 - t2 <= |x1 - y1| / 3");
    double cap = curve.diameter() / (10.0 * sp.C0);
    check("iii", chord / 3.0 <= cap, chord / 3.0, cap, "|x1 - y1| / 3 <= diam / (10 C0)");
    check("iv", chord / (20.0 * sp.C0) <= delta, chord / (20.0 * sp.C0), delta, "|x1 - y1| / (20 C0) <= increment");
    check("iv", delta <= chord / 3.0, delta, chord / 3.0, "increment <= |x1 - y1| / 3");

    // Q: arc of the t1 curve from x1 to y1, then back along the t2 curve from y2 to x2.
    double dtol = 1e-9 * curve.diameter();
    std::vector<Vec2> quad;
    append_dedup(quad, g1.arc_polyline(sx1, sy1), dtol);
    auto back = g2.arc_polyline(g2.arc_param(cx2), g2.arc_param(cy2));
    std::reverse(back.begin(), back.end());
    append_dedup(quad, back, dtol);
    while (quad.size() > 1 && dist(quad.front(), quad.back()) <= dtol) quad.pop_back();
    std::optional<JordanCurve> qcurve;
    try {
        qcurve.emplace(quad);
    } catch (const std::invalid_argument& e) {
        throw AdmissibilityError("quadrilateral", std::string("boundary of Q is not a Jordan curve: ") + e.what());
    }
    sp.quad = qcurve->vertices();

    sp.x1 = lift(curve, gauge, {sp.px1}, 1)[0];
    sp.y1 = lift(curve, gauge, {sp.py1}, 1)[0];
    sp.x2 = lift(curve, gauge, {sp.px2}, 1)[0];
    sp.y2 = lift(curve, gauge, {sp.py2}, 1)[0];

    PlanarMesh pm = triangulate_domain(*qcurve, opt.patch_resolution, false);
    for (auto& p : pm.points) {
        if (!curve.contains(p) && curve.distance(p) > dtol) throw AdmissibilityError("quadrilateral", "Q leaves the domain");
    }
    for (size_t i = 0; i < pm.points.size(); ++i) {
        double d = curve.distance(pm.points[i]);
        sp.patch.vertices.push_back({pm.points[i].x, pm.points[i].y, gauge(d)});
        sp.patch.planar.push_back(pm.points[i]);
        sp.patch.boundary_distance.push_back(d);
        sp.patch.tags.push_back(VertexTag::upper);
    }
    sp.patch.triangles = pm.triangles;

    // Boundary samples of D.
    JordanCurve& qc = *qcurve;
    size_t ns = 1024;
    for (size_t k = 0; k < ns; ++k) {
        Vec2 p = qc.at_arc(qc.length() * static_cast<double>(k) / static_cast<double>(ns)).position;
        sp.boundary_samples.push_back({p.x, p.y, gauge(curve.distance(p))});
    }
    double diam = 0.0;
    for (size_t a = 0; a < ns; ++a)
        for (size_t b = a + 1; b < ns; ++b) diam = std::max(diam, dist(sp.boundary_samples[a], sp.boundary_samples[b]));
    sp.diameter = diam;

    // Rough center: point of sigma (lift of the t3 arc inside Q) equidistant from its endpoints.
    sp.t3 = solve_t3(gauge, t1, t2);
    JordanCurve g3 = level_curve(field, sp.t3, "t3");
    double f3 = (t1 - sp.t3) / (t1 - t2);
    CurvePoint a3 = g3.closest(lerp(sp.px1, sp.px2, f3)), b3 = g3.closest(lerp(sp.py1, sp.py2, f3));
    double sa = g3.arc_param(a3), sb = g3.arc_param(b3);
    double span = sb - sa;
    if (span < 0) span += g3.length();
    auto excess = [&](double s) {
        Vec2 p = g3.at_arc(sa + s).position;
        return dist(p, a3.position) - dist(p, b3.position);
    };
    double lo = 0.0, hi = span;
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        (excess(mid) < 0 ? lo : hi) = mid;
    }
    Vec2 c = g3.at_arc(sa + 0.5 * (lo + hi)).position;
    sp.rough_center = {c.x, c.y, gauge(curve.distance(c))};
    sp.center_ratio_min = std::numeric_limits<double>::infinity();
    for (const auto& w : sp.boundary_samples) {
        double r = dist(sp.rough_center, w) / diam;
        sp.center_ratio_min = std::min(sp.center_ratio_min, r);
        sp.center_ratio_max = std::max(sp.center_ratio_max, r);
    }
    return sp;
}

PieceArea square_piece_area(const SquarePiece& piece) {
    PieceArea a;
    a.area = piece.patch.area();
    a.chord = dist(piece.x1, piece.y1);
    a.ratio = a.area / (a.chord * a.chord);
    a.C = std::max(a.ratio, 1.0 / a.ratio);
    return a;
}

}  // namespace qsdome
