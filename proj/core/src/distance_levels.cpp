#include "qsdome/distance_levels.hpp"

#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "qsdome/parallel.hpp"

namespace qsdome {

namespace {

double frac_part(double v) { return v - std::floor(v); }

struct UnionFind {
    std::vector<uint32_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    uint32_t find(uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

struct Contours {
    std::vector<std::vector<Vec2>> loops;
    std::vector<uint64_t> first_edge;
    std::vector<std::pair<size_t, size_t>> saddles_center_in;
};

// Marching squares at level eps; loops keep the region {value > eps} on their left.
Contours trace_contours(const DistanceField& f, double eps) {
    const Grid& g = f.grid();
    const auto& val = f.values();
    auto in = [&](size_t i, size_t j) { return val[g.id(i, j)] > eps; };
    auto hid = [&](size_t i, size_t j) { return static_cast<uint64_t>(2 * g.id(i, j)); };
    auto vid = [&](size_t i, size_t j) { return static_cast<uint64_t>(2 * g.id(i, j) + 1); };

    std::unordered_map<uint64_t, Vec2> pos;
    std::unordered_map<uint64_t, uint64_t> next;
    Contours out;

    auto crossing = [&](uint64_t e) {
        auto it = pos.find(e);
        if (it != pos.end()) return;
        size_t node = e / 2;
        size_t i = node % g.nx, j = node / g.nx;
        size_t i2 = (e & 1) ? i : i + 1;
        size_t j2 = (e & 1) ? j + 1 : j;
        double va = val[g.id(i, j)], vb = val[g.id(i2, j2)];
        double t = std::clamp((eps - va) / (vb - va), 0.0, 1.0);
        pos.emplace(e, lerp(g.node(i, j), g.node(i2, j2), t));
    };

    for (size_t j = 0; j + 1 < g.ny; ++j)
        for (size_t i = 0; i + 1 < g.nx; ++i) {
            bool c[4] = {in(i, j), in(i + 1, j), in(i + 1, j + 1), in(i, j + 1)};
            if (c[0] == c[1] && c[1] == c[2] && c[2] == c[3]) continue;
            uint64_t e[4] = {hid(i, j), vid(i + 1, j), hid(i, j + 1), vid(i, j)};
            struct X {
                uint64_t edge;
                bool exit;
            };
            X xs[4];
            int nxs = 0;
            for (int k = 0; k < 4; ++k)
                if (c[k] != c[(k + 1) % 4]) {
                    xs[nxs++] = {e[k], c[k]};
                    crossing(e[k]);
                }
            if (nxs == 2) {
                const X& ex = xs[0].exit ? xs[0] : xs[1];
                const X& en = xs[0].exit ? xs[1] : xs[0];
                next[ex.edge] = en.edge;
            } else {
                Vec2 center = g.node(i, j) + Vec2{0.5 * g.h, 0.5 * g.h};
                bool cin = f.exact(center) > eps;
                if (cin) out.saddles_center_in.emplace_back(i, j);
                for (int q = 0; q < 4; ++q) {
                    if (!xs[q].exit) continue;
                    next[xs[q].edge] = xs[cin ? (q + 1) % 4 : (q + 3) % 4].edge;
                }
            }
        }

    std::vector<uint64_t> starts;
    starts.reserve(next.size());
    for (const auto& kv : next) starts.push_back(kv.first);
    std::sort(starts.begin(), starts.end());
    std::unordered_map<uint64_t, bool> seen;
    double tiny = 1e-14 * g.h;
    for (uint64_t s : starts) {
        if (seen.count(s)) continue;
        std::vector<Vec2> loop;
        uint64_t e = s;
        do {
            seen[e] = true;
            Vec2 p = pos.at(e);
            if (loop.empty() || dist(loop.back(), p) > tiny) loop.push_back(p);
            auto it = next.find(e);
            if (it == next.end()) throw std::logic_error("open marching-squares contour");
            e = it->second;
        } while (e != s);
        while (loop.size() > 1 && dist(loop.front(), loop.back()) <= tiny) loop.pop_back();
        if (loop.size() < 3) continue;
        out.loops.push_back(std::move(loop));
        out.first_edge.push_back(s);
    }
    return out;
}

}  // namespace

Grid make_grid(const JordanCurve& curve, size_t resolution) {
    if (resolution < 2) throw std::invalid_argument("grid resolution too small");
    const BBox& b = curve.bbox();
    double ext = std::max(b.width(), b.height());
    Grid g;
    g.h = ext / static_cast<double>(resolution);
    double frac = 0.0371;
    for (int attempt = 0; attempt < 32; ++attempt) {
        g.origin = b.lo - Vec2{(1.5 + frac) * g.h, (1.5 + frac) * g.h};
        bool clean = true;
        for (auto v : curve.vertices()) {
            double fx = frac_part((v.x - g.origin.x) / g.h), fy = frac_part((v.y - g.origin.y) / g.h);
            if (std::min(fx, 1 - fx) < 1e-7 || std::min(fy, 1 - fy) < 1e-7) {
                clean = false;
                break;
            }
        }
        if (clean) break;
        frac = std::fmod(frac + 0.1113, 0.45);
    }
    g.nx = static_cast<size_t>(std::ceil(b.width() / g.h)) + 5;
    g.ny = static_cast<size_t>(std::ceil(b.height() / g.h)) + 5;
    return g;
}

DistanceField::DistanceField(const JordanCurve& curve, size_t resolution)
    : curve_(curve), resolution_(resolution), grid_(make_grid(curve, resolution)) {
    value_.assign(grid_.nx * grid_.ny, 0.0);
    const auto& v = curve_.vertices();
    size_t n = v.size();
    parallel_for(grid_.ny, [&](size_t j) {
        double y = grid_.origin.y + static_cast<double>(j) * grid_.h;
        std::vector<double> xs;
        for (size_t k = 0; k < n; ++k) {
            Vec2 a = v[k], b = v[(k + 1) % n];
            if ((a.y > y) != (b.y > y)) xs.push_back(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
        }
        std::sort(xs.begin(), xs.end());
        size_t k = 0;
        bool inside = false;
        double upper = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < grid_.nx; ++i) {
            Vec2 p = grid_.node(i, j);
            while (k < xs.size() && xs[k] < p.x) {
                inside = !inside;
                ++k;
            }
            double d = curve_.index().nearest(p, upper).dist;
            upper = d + grid_.h * (1.0 + 1e-9);
            value_[grid_.id(i, j)] = inside ? d : -d;
        }
    });
}

double DistanceField::exact(Vec2 p) const {
    double d = curve_.distance(p);
    return curve_.contains(p) ? d : -d;
}

double distance_to_boundary(const JordanCurve& curve, Vec2 p) { return curve.distance(p); }

std::string to_string(LevelClass c) {
    switch (c) {
        case LevelClass::empty: return "empty";
        case LevelClass::jordan: return "jordan";
        case LevelClass::multi_component: return "multi_component";
        case LevelClass::self_touching: return "self_touching";
    }
    return "unknown";
}

LevelSet extract_level_set(const DistanceField& field, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("level epsilon must be positive");
    LevelSet ls;
    ls.epsilon = eps;
    ls.cell_diagonal = field.cell_diagonal();
    ls.components = trace_contours(field, eps).loops;
    if (ls.components.empty()) {
        ls.classification = LevelClass::empty;
    } else if (ls.components.size() > 1) {
        ls.classification = LevelClass::multi_component;
    } else {
        const auto& loop = ls.components.front();
        bool simple = polygon_signed_area(loop) != 0.0 && !JordanCurve::self_intersection(loop);
        ls.classification = simple ? LevelClass::jordan : LevelClass::self_touching;
    }
    return ls;
}

LevelSet extract_level_set(const JordanCurve& curve, double eps, size_t resolution) {
    if (resolution < 64) throw std::invalid_argument("level-set resolution must be at least 64");
    return extract_level_set(DistanceField(curve, resolution), eps);
}

DeltaRegion delta_components(const DistanceField& field, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("level epsilon must be positive");
    const Grid& g = field.grid();
    const auto& val = field.values();
    Contours cs = trace_contours(field, eps);
    UnionFind uf(g.nx * g.ny);
    for (size_t j = 0; j < g.ny; ++j)
        for (size_t i = 0; i < g.nx; ++i) {
            if (!(val[g.id(i, j)] > eps)) continue;
            if (i + 1 < g.nx && val[g.id(i + 1, j)] > eps) uf.unite(g.id(i, j), g.id(i + 1, j));
            if (j + 1 < g.ny && val[g.id(i, j + 1)] > eps) uf.unite(g.id(i, j), g.id(i, j + 1));
        }
    for (auto [i, j] : cs.saddles_center_in) {
        if (val[g.id(i, j)] > eps) uf.unite(g.id(i, j), g.id(i + 1, j + 1));
        else uf.unite(g.id(i + 1, j), g.id(i, j + 1));
    }
    std::map<uint32_t, size_t> label;
    std::vector<size_t> counts;
    for (size_t k = 0; k < val.size(); ++k) {
        if (!(val[k] > eps)) continue;
        uint32_t r = uf.find(static_cast<uint32_t>(k));
        auto [it, fresh] = label.emplace(r, counts.size());
        if (fresh) counts.push_back(0);
        ++counts[it->second];
    }
    DeltaRegion out;
    out.epsilon = eps;
    out.areas.resize(counts.size());
    out.boundaries.resize(counts.size());
    for (size_t c = 0; c < counts.size(); ++c) out.areas[c] = static_cast<double>(counts[c]) * g.h * g.h;
    std::vector<double> best(counts.size(), -1.0);
    for (size_t l = 0; l < cs.loops.size(); ++l) {
        uint64_t e = cs.first_edge[l];
        size_t node = e / 2;
        size_t i = node % g.nx, j = node / g.nx;
        size_t other = (e & 1) ? g.id(i, j + 1) : g.id(i + 1, j);
        size_t inside = val[node] > eps ? node : other;
        size_t c = label.at(uf.find(static_cast<uint32_t>(inside)));
        double a = std::abs(polygon_signed_area(cs.loops[l]));
        if (a > best[c]) {
            best[c] = a;
            out.boundaries[c] = cs.loops[l];
        }
    }
    return out;
}

DeltaRegion delta_components(const JordanCurve& curve, double eps, size_t resolution) {
    return delta_components(DistanceField(curve, resolution), eps);
}

Inradius inradius(const DistanceField& field) {
    const Grid& g = field.grid();
    const auto& val = field.values();
    size_t k = static_cast<size_t>(std::max_element(val.begin(), val.end()) - val.begin());
    Vec2 p = g.node(k % g.nx, k / g.nx);
    double f = field.exact(p);
    double step = g.h;
    double stop = 1e-12 * std::max(field.curve().diameter(), 1e-300);
    const Vec2 dirs[8] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {0.7071067811865476, 0.7071067811865476},
                          {-0.7071067811865476, 0.7071067811865476}, {0.7071067811865476, -0.7071067811865476},
                          {-0.7071067811865476, -0.7071067811865476}};
    while (step > stop) {
        Vec2 bp = p;
        double bf = f;
        for (auto d : dirs) {
            Vec2 q = p + d * step;
            double fq = field.exact(q);
            if (fq > bf) {
                bf = fq;
                bp = q;
            }
        }
        if (bf > f) {
            p = bp;
            f = bf;
        } else {
            step *= 0.5;
        }
    }
    return {p, f};
}

Proximity proximity_constant(const JordanCurve& curve, const LevelSet& level, size_t min_samples) {
    if (level.components.empty()) throw std::domain_error("proximity constant needs a nonempty level set");
    SegmentIndex idx = SegmentIndex::from_loops(level.components);
    SampleOptions opt;
    opt.min_samples = min_samples;
    opt.max_samples = std::numeric_limits<size_t>::max();
    CurveSamples S = curve_samples(curve, opt);
    Proximity out;
    out.samples = S.p.size();
    out.M = 0.0;
    out.min_ratio = std::numeric_limits<double>::infinity();
    for (auto p : S.p) {
        double r = idx.distance(p) / level.epsilon;
        if (r > out.M) {
            out.M = r;
            out.witness = p;
        }
        out.min_ratio = std::min(out.min_ratio, r);
    }
    return out;
}

Proximity proximity_constant(const JordanCurve& curve, double eps, size_t resolution) {
    return proximity_constant(curve, extract_level_set(curve, eps, resolution));
}

std::vector<double> geometric_ladder(double r, int levels) {
    std::vector<double> out;
    for (int k = 1; k <= levels; ++k) out.push_back(r * std::ldexp(1.0, -k));
    return out;
}

LevelScanReport level_scan(const JordanCurve& curve, std::vector<double> ladder, double K_max, double c_max,
                           size_t resolution) {
    if (resolution < 64) throw std::invalid_argument("level-scan resolution must be at least 64");
    DistanceField field(curve, resolution);
    LevelScanReport rep;
    rep.K_max = K_max;
    rep.c_max = c_max;
    rep.resolution = resolution;
    rep.inradius = inradius(field).radius;
    if (ladder.empty()) ladder = geometric_ladder(rep.inradius);
    for (size_t k = 0; k < ladder.size(); ++k) {
        if (!(ladder[k] > 0)) throw std::invalid_argument("ladder entries must be positive");
        if (k > 0 && !(ladder[k] < ladder[k - 1])) throw std::invalid_argument("ladder must be decreasing");
    }
    rep.entries.resize(ladder.size());
    parallel_for(ladder.size(), [&](size_t k) {
        LevelScanEntry& e = rep.entries[k];
        e.epsilon = ladder[k];
        LevelSet ls = extract_level_set(field, ladder[k]);
        e.classification = ls.classification;
        e.components = ls.components.size();
        if (!ls.components.empty()) e.proximity = proximity_constant(curve, ls).M;
        if (ls.classification == LevelClass::jordan) {
            JordanCurve c(ls.components.front());
            e.two_point = two_point_constant(c).value;
            e.chord_arc = chord_arc_constant(c).value;
        }
    });
    bool ljc = true, lqc = true, lca = true;
    for (size_t k = rep.entries.size(); k-- > 0;) {
        const auto& e = rep.entries[k];
        ljc = ljc && e.classification == LevelClass::jordan;
        lqc = lqc && ljc && e.two_point && *e.two_point <= K_max;
        lca = lca && lqc && e.chord_arc && *e.chord_arc <= c_max;
        if (ljc) rep.ljc_eps0 = e.epsilon;
        if (lqc) rep.lqc_eps0 = e.epsilon;
        if (lca) rep.lca_eps0 = e.epsilon;
    }
    return rep;
}

}  // namespace qsdome
