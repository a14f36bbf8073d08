#include "qsdome/curve.hpp"

#include <stdexcept>

namespace qsdome {

namespace {

// Lexicographic order with coordinates equal up to tol treated as ties.
bool lex_less(Vec2 a, Vec2 b, double tol) {
    if (std::abs(a.x - b.x) > tol) return a.x < b.x;
    return a.y < b.y - tol;
}

double wrap(double s, double L) {
    s = std::fmod(s, L);
    if (s < 0) s += L;
    return s;
}

// Visits every unordered sample pair (a,b) once (twice for antipodal index gaps) together with
// the diameters of the ccw sample ranges a..b and b..a.
template <class F>
void for_each_pair_with_arc_diameters(const std::vector<Vec2>& P, F&& visit) {
    size_t n = P.size();
    size_t H = n / 2;
    std::vector<double> stored((H + 1) * n, 0.0);
    std::vector<double> prev(n, 0.0), cur(n);
    for (size_t L = 1; L < n; ++L) {
        for (size_t a = 0; a < n; ++a) {
            size_t a1 = a + 1 == n ? 0 : a + 1;
            size_t aL = a + L >= n ? a + L - n : a + L;
            cur[a] = std::max({prev[a], prev[a1], dist(P[a], P[aL])});
        }
        if (L <= H) std::copy(cur.begin(), cur.end(), stored.begin() + L * n);
        if (2 * L >= n) {
            const double* comp = &stored[(n - L) * n];
            for (size_t a = 0; a < n; ++a) {
                size_t b = a + L >= n ? a + L - n : a + L;
                visit(a, b, L, cur[a], comp[b]);
            }
        }
        std::swap(prev, cur);
    }
}

// true when the ccw arc s0->s1 is the chosen (smaller-diameter) one.
bool choose_first(const JordanCurve& c, double s0, double s1, double d01, double d10) {
    double scale = std::max(d01, d10);
    if (std::abs(d01 - d10) > 1e-12 * scale) return d01 < d10;
    double L = c.length();
    double len01 = wrap(s1 - s0, L);
    Vec2 m01 = c.at_arc(s0 + 0.5 * len01).position;
    Vec2 m10 = c.at_arc(s1 + 0.5 * (L - len01)).position;
    return !lex_less(m10, m01, 1e-12 * c.diameter());
}

double exact_two_point_ratio(const JordanCurve& c, double sx, double sy, double floor) {
    Vec2 x = c.at_arc(sx).position;
    Vec2 y = c.at_arc(sy).position;
    double chord = dist(x, y);
    if (chord <= 0.0 || chord < floor) return -1.0;
    double d1 = point_set_diameter(c.arc_polyline(sx, sy));
    double d2 = point_set_diameter(c.arc_polyline(sy, sx));
    return std::min(d1, d2) / chord;
}

double exact_chord_arc_ratio(const JordanCurve& c, double sx, double sy, double floor) {
    Vec2 x = c.at_arc(sx).position;
    Vec2 y = c.at_arc(sy).position;
    double chord = dist(x, y);
    if (chord <= 0.0 || chord < floor) return -1.0;
    double L = c.length();
    double l = wrap(sy - sx, L);
    return std::min(l, L - l) / chord;
}

template <class R>
void local_search(double& sx, double& sy, double& val, double delta, int rounds, R&& ratio) {
    for (int round = 0; round < rounds; ++round) {
        for (int iter = 0; iter < 64; ++iter) {
            double bx = sx, by = sy, bv = val;
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy) {
                    if (dx == 0 && dy == 0) continue;
                    double cx = sx + dx * delta, cy = sy + dy * delta;
                    double v = ratio(cx, cy);
                    if (v > bv) {
                        bv = v;
                        bx = cx;
                        by = cy;
                    }
                }
            if (bv <= val) break;
            sx = bx;
            sy = by;
            val = bv;
        }
        delta *= 0.5;
    }
}

}  // namespace

JordanCurve::JordanCurve(std::vector<Vec2> vertices) : v_(std::move(vertices)) {
    size_t n = v_.size();
    if (n < 3) throw std::invalid_argument("JordanCurve needs at least 3 vertices");
    for (size_t i = 0; i < n; ++i) {
        if (!std::isfinite(v_[i].x) || !std::isfinite(v_[i].y))
            throw std::invalid_argument("JordanCurve vertex is not finite");
        if (v_[i] == v_[(i + 1) % n])
            throw std::invalid_argument("JordanCurve has coincident consecutive vertices at " + std::to_string(i));
    }
    area_ = polygon_signed_area(v_);
    if (area_ == 0.0) throw std::invalid_argument("JordanCurve encloses zero area");
    if (area_ < 0) {
        std::reverse(v_.begin(), v_.end());
        area_ = -area_;
    }
    if (auto hit = self_intersection(v_))
        throw std::invalid_argument("JordanCurve is not simple: edges " + std::to_string(hit->first) + " and " +
                                    std::to_string(hit->second) + " meet");
    cum_.resize(n + 1);
    cum_[0] = 0.0;
    for (size_t i = 0; i < n; ++i) {
        cum_[i + 1] = cum_[i] + dist(v_[i], v_[(i + 1) % n]);
        box_.add(v_[i]);
    }
    diam_ = point_set_diameter(v_);
    index_ = SegmentIndex::from_loops({v_});
}

double JordanCurve::median_edge_length() const {
    std::vector<double> e(size());
    for (size_t i = 0; i < size(); ++i) e[i] = edge_length(i);
    std::nth_element(e.begin(), e.begin() + e.size() / 2, e.end());
    return e[e.size() / 2];
}

CurvePoint JordanCurve::point(size_t edge, double t) const {
    if (edge >= size()) throw std::out_of_range("edge index");
    t = std::clamp(t, 0.0, 1.0);
    return {edge, t, lerp(v_[edge], v_[(edge + 1) % size()], t)};
}

CurvePoint JordanCurve::at_arc(double s) const {
    s = wrap(s, length());
    size_t e = static_cast<size_t>(std::upper_bound(cum_.begin(), cum_.end(), s) - cum_.begin());
    e = e == 0 ? 0 : e - 1;
    if (e >= size()) e = size() - 1;
    double t = (s - cum_[e]) / edge_length(e);
    return point(e, t);
}

double JordanCurve::arc_param(const CurvePoint& p) const { return cum_[p.edge] + p.t * edge_length(p.edge); }

CurvePoint JordanCurve::closest(Vec2 p) const {
    auto hit = index_.nearest(p);
    return point(hit.segment, hit.t);
}

std::vector<Vec2> JordanCurve::arc_polyline(double s0, double s1) const {
    double L = length();
    s0 = wrap(s0, L);
    s1 = wrap(s1, L);
    std::vector<Vec2> out;
    out.push_back(at_arc(s0).position);
    auto first_after = [&](double s) {
        return static_cast<size_t>(std::upper_bound(cum_.begin(), cum_.begin() + size(), s) - cum_.begin());
    };
    auto first_at_or_after = [&](double s) {
        return static_cast<size_t>(std::lower_bound(cum_.begin(), cum_.begin() + size(), s) - cum_.begin());
    };
    if (s1 > s0) {
        for (size_t i = first_after(s0); i < size() && cum_[i] < s1; ++i) out.push_back(v_[i]);
    } else {
        for (size_t i = first_after(s0); i < size(); ++i) out.push_back(v_[i]);
        for (size_t i = 0; i < first_at_or_after(s1); ++i) out.push_back(v_[i]);
    }
    Vec2 end = at_arc(s1).position;
    if (!(out.back() == end)) out.push_back(end);
    return out;
}

std::optional<std::pair<size_t, size_t>> JordanCurve::self_intersection(const std::vector<Vec2>& pts) {
    size_t n = pts.size();
    BBox box;
    for (auto p : pts) box.add(p);
    size_t G = std::clamp<size_t>(static_cast<size_t>(std::sqrt(static_cast<double>(n))), 1, 1024);
    double cs = std::max(box.width(), box.height()) / static_cast<double>(G);
    if (cs <= 0) cs = 1.0;
    std::vector<std::vector<uint32_t>> cells(G * G);
    auto cell_of = [&](double v, double lo) {
        return std::min(G - 1, static_cast<size_t>(std::max(0.0, (v - lo) / cs)));
    };
    for (size_t i = 0; i < n; ++i) {
        Vec2 a = pts[i], b = pts[(i + 1) % n];
        size_t i0 = cell_of(std::min(a.x, b.x), box.lo.x), i1 = cell_of(std::max(a.x, b.x), box.lo.x);
        size_t j0 = cell_of(std::min(a.y, b.y), box.lo.y), j1 = cell_of(std::max(a.y, b.y), box.lo.y);
        for (size_t j = j0; j <= j1; ++j)
            for (size_t k = i0; k <= i1; ++k) cells[j * G + k].push_back(static_cast<uint32_t>(i));
    }
    std::optional<std::pair<size_t, size_t>> found;
    for (const auto& cell : cells) {
        for (size_t p = 0; p < cell.size(); ++p)
            for (size_t q = p + 1; q < cell.size(); ++q) {
                size_t i = std::min(cell[p], cell[q]), j = std::max(cell[p], cell[q]);
                Vec2 a = pts[i], b = pts[(i + 1) % n], c = pts[j], d = pts[(j + 1) % n];
                bool hit;
                if (j == i + 1) {
                    hit = orient(a, b, d) == 0.0 && dot(b - a, d - b) < 0.0;
                } else if (i == 0 && j == n - 1) {
                    hit = orient(c, a, b) == 0.0 && dot(a - c, b - a) < 0.0;
                } else {
                    hit = segments_intersect(a, b, c, d);
                }
                if (hit && (!found || std::make_pair(i, j) < *found)) found = std::make_pair(i, j);
            }
    }
    return found;
}

double arc_length(const JordanCurve& curve) { return curve.length(); }

std::pair<Subarc, Subarc> subarc_split(const JordanCurve& curve, const CurvePoint& x, const CurvePoint& y) {
    if (x.position == y.position) throw std::invalid_argument("subarc endpoints coincide");
    double sx = curve.arc_param(x), sy = curve.arc_param(y);
    Subarc a{x, y, SubarcSide::smaller_diameter, curve.arc_polyline(sx, sy), 0.0, 0.0};
    Subarc b{y, x, SubarcSide::complement, curve.arc_polyline(sy, sx), 0.0, 0.0};
    a.diameter = point_set_diameter(a.polyline);
    b.diameter = point_set_diameter(b.polyline);
    a.length = wrap(sy - sx, curve.length());
    b.length = curve.length() - a.length;
    if (!choose_first(curve, sx, sy, a.diameter, b.diameter)) std::swap(a, b);
    a.which = SubarcSide::smaller_diameter;
    b.which = SubarcSide::complement;
    return {std::move(a), std::move(b)};
}

Subarc subarc(const JordanCurve& curve, const CurvePoint& x, const CurvePoint& y) {
    return subarc_split(curve, x, y).first;
}

double chordal_flatness(const JordanCurve& curve, const CurvePoint& x, const CurvePoint& y) {
    Subarc arc = subarc(curve, x, y);
    double chord = dist(x.position, y.position);
    double m = 0.0;
    for (auto p : arc.polyline) m = std::max(m, point_line_dist(p, x.position, y.position));
    return m / chord;
}

CurveSamples curve_samples(const JordanCurve& curve, const SampleOptions& opt) {
    CurveSamples out;
    size_t n = curve.size();
    const auto& cum = curve.cumulative();
    if (n >= opt.min_samples) {
        if (n <= opt.max_samples) {
            out.s.assign(cum.begin(), cum.begin() + n);
        } else {
            for (size_t k = 0; k < opt.max_samples; ++k) out.s.push_back(cum[k * n / opt.max_samples]);
        }
    } else {
        double L = curve.length();
        for (size_t e = 0; e < n; ++e) {
            double le = curve.edge_length(e);
            auto m = static_cast<size_t>(std::max(1.0, std::ceil(le / L * static_cast<double>(opt.min_samples))));
            for (size_t j = 0; j < m; ++j) out.s.push_back(cum[e] + le * static_cast<double>(j) / static_cast<double>(m));
        }
    }
    out.p.reserve(out.s.size());
    for (double s : out.s) out.p.push_back(curve.at_arc(s).position);
    return out;
}

double default_scale_floor(const JordanCurve& curve) { return 1e-3 * curve.diameter(); }

ConstantReport two_point_constant(const JordanCurve& curve, double scale_floor, const SampleOptions& opt) {
    if (scale_floor <= 0.0) scale_floor = default_scale_floor(curve);
    CurveSamples S = curve_samples(curve, opt);
    double best = -1.0;
    size_t bx = 0, by = 1;
    for_each_pair_with_arc_diameters(S.p, [&](size_t a, size_t b, size_t, double dab, double dba) {
        double chord = dist(S.p[a], S.p[b]);
        if (chord <= 0.0 || chord < scale_floor) return;
        double r = std::min(dab, dba) / chord;
        if (r > best) {
            best = r;
            bx = a;
            by = b;
        }
    });
    double sx = S.s[bx], sy = S.s[by];
    double val = exact_two_point_ratio(curve, sx, sy, scale_floor);
    double delta = curve.length() / static_cast<double>(S.s.size());
    local_search(sx, sy, val, delta, opt.refine_rounds,
                 [&](double u, double v) { return exact_two_point_ratio(curve, u, v, scale_floor); });
    ConstantReport rep;
    rep.constant_name = "two_point";
    rep.value = std::max(1.0, val);
    rep.argmax_x = curve.at_arc(sx);
    rep.argmax_y = curve.at_arc(sy);
    rep.scale = scale_floor;
    rep.samples = S.s.size();
    return rep;
}

ConstantReport chord_arc_constant(const JordanCurve& curve, double scale_floor, const SampleOptions& opt) {
    if (scale_floor <= 0.0) scale_floor = default_scale_floor(curve);
    CurveSamples S = curve_samples(curve, opt);
    double L = curve.length();
    double best = -1.0;
    size_t bx = 0, by = 1;
    size_t n = S.s.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            double chord = dist(S.p[i], S.p[j]);
            if (chord <= 0.0 || chord < scale_floor) continue;
            double l = S.s[j] - S.s[i];
            double r = std::min(l, L - l) / chord;
            if (r > best) {
                best = r;
                bx = i;
                by = j;
            }
        }
    double sx = S.s[bx], sy = S.s[by];
    double val = exact_chord_arc_ratio(curve, sx, sy, scale_floor);
    local_search(sx, sy, val, L / static_cast<double>(n), opt.refine_rounds,
                 [&](double u, double v) { return exact_chord_arc_ratio(curve, u, v, scale_floor); });
    ConstantReport rep;
    rep.constant_name = "chord_arc";
    rep.value = std::max(1.0, val);
    rep.argmax_x = curve.at_arc(sx);
    rep.argmax_y = curve.at_arc(sy);
    rep.scale = scale_floor;
    rep.samples = n;
    return rep;
}

FlatnessProfile flatness_profile(const JordanCurve& curve, const std::vector<double>& radii, const SampleOptions& opt) {
    if (radii.empty()) throw std::invalid_argument("flatness_profile needs at least one radius");
    for (size_t k = 0; k < radii.size(); ++k) {
        if (!(radii[k] > 0.0)) throw std::invalid_argument("flatness radii must be positive");
        if (k > 0 && !(radii[k] < radii[k - 1])) throw std::invalid_argument("flatness radii must be decreasing");
    }
    CurveSamples S = curve_samples(curve, opt);
    size_t n = S.p.size();
    size_t m = radii.size();
    std::vector<double> shell(m, 0.0);
    double rmax = radii.front();
    for_each_pair_with_arc_diameters(S.p, [&](size_t a, size_t b, size_t L, double dab, double dba) {
        Vec2 x = S.p[a], y = S.p[b];
        double chord = dist(x, y);
        if (chord <= 0.0 || chord > rmax) return;
        // shell index k: radii[k+1] < chord <= radii[k]
        size_t k = static_cast<size_t>(
                       std::lower_bound(radii.rbegin(), radii.rend(), chord) - radii.rbegin());
        k = m - 1 - k;
        bool first = choose_first(curve, S.s[a], S.s[b], dab, dba);
        size_t start = first ? a : b;
        size_t count = first ? L : n - L;
        double z = 0.0;
        for (size_t i = 1; i < count; ++i) {
            size_t idx = start + i;
            if (idx >= n) idx -= n;
            z = std::max(z, point_line_dist(S.p[idx], x, y));
        }
        shell[k] = std::max(shell[k], z / chord);
    });
    FlatnessProfile prof;
    prof.samples = n;
    prof.entries.resize(m);
    double env = 0.0;
    for (size_t k = m; k-- > 0;) {
        env = std::max(env, shell[k]);
        prof.entries[k] = {radii[k], shell[k], env, radii[k] > curve.diameter()};
    }
    double trusted = 4.0 * curve.median_edge_length();
    size_t pick = 0;
    bool ok = false;
    for (size_t k = 0; k < m; ++k)
        if (radii[k] >= trusted) {
            pick = k;
            ok = true;
        }
    prof.estimate = prof.entries[pick].envelope;
    prof.estimate_scale = radii[pick];
    prof.estimate_trusted = ok;
    return prof;
}

}  // namespace qsdome
