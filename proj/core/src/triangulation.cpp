#include "qsdome/triangulation.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "qsdome/distance_levels.hpp"

namespace qsdome {

double PlanarMesh::area() const {
    double s = 0.0;
    for (const auto& t : triangles) s += 0.5 * orient(points[t[0]], points[t[1]], points[t[2]]);
    return s;
}

void ear_clip(const std::vector<Vec2>& pts, std::vector<uint32_t> poly,
              std::vector<std::array<uint32_t, 3>>& out) {
    poly.erase(std::unique(poly.begin(), poly.end()), poly.end());
    while (poly.size() > 1 && poly.front() == poly.back()) poly.pop_back();
    auto inside_closed = [&](Vec2 p, Vec2 a, Vec2 b, Vec2 c) {
        return orient(a, b, p) >= 0 && orient(b, c, p) >= 0 && orient(c, a, p) >= 0;
    };
    while (poly.size() > 3) {
        size_t m = poly.size();
        size_t pick = m, fallback = m;
        double best = 0.0;
        for (size_t i = 0; i < m; ++i) {
            uint32_t a = poly[(i + m - 1) % m], b = poly[i], c = poly[(i + 1) % m];
            double o = orient(pts[a], pts[b], pts[c]);
            if (o <= 0) continue;
            bool ok = true;
            for (size_t k = 0; k < m && ok; ++k) {
                uint32_t q = poly[k];
                if (q == a || q == b || q == c) continue;
                Vec2 p = pts[q];
                if (p == pts[a] || p == pts[b] || p == pts[c]) continue;
                if (inside_closed(p, pts[a], pts[b], pts[c])) ok = false;
            }
            if (ok) {
                pick = i;
                break;
            }
            if (o > best) {
                best = o;
                fallback = i;
            }
        }
        if (pick == m) pick = fallback;
        if (pick == m) throw std::runtime_error("triangulation failure: no ear found");
        size_t i = pick;
        out.push_back({poly[(i + m - 1) % m], poly[i], poly[(i + 1) % m]});
        poly.erase(poly.begin() + static_cast<long>(i));
    }
    if (poly.size() == 3 && orient(pts[poly[0]], pts[poly[1]], pts[poly[2]]) > 0)
        out.push_back({poly[0], poly[1], poly[2]});
}

namespace {

struct BoundaryPoint {
    Vec2 pos;
    int64_t grid_edge = -1;  // 2*node (+1 for vertical); -1 for curve vertices
    int64_t enter_cell = -1;  // cell entered when walking forward through this crossing
};

struct Chain {
    size_t first = 0;  // index into the boundary walk of the entry crossing
    size_t last = 0;   // exit crossing (cyclic index)
    double u_in = 0.0;
    double u_out = 0.0;
};

// Interior edges joining two curve points would make both sheets share a face after lifting;
// each gets a midpoint vertex off the curve.
void split_boundary_chords(const JordanCurve& curve, PlanarMesh& mesh) {
    std::map<std::pair<uint32_t, uint32_t>, int> uses;
    for (const auto& t : mesh.triangles)
        for (int k = 0; k < 3; ++k) {
            uint32_t a = t[k], b = t[(k + 1) % 3];
            if (mesh.on_boundary[a] && mesh.on_boundary[b]) ++uses[{std::min(a, b), std::max(a, b)}];
        }
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> mid;
    for (const auto& [e, count] : uses) {
        if (count < 2) continue;
        Vec2 m = (mesh.points[e.first] + mesh.points[e.second]) * 0.5;
        double d = curve.distance(m);
        if (!(d > 0)) continue;
        mid[e] = static_cast<uint32_t>(mesh.points.size());
        mesh.points.push_back(m);
        mesh.boundary_distance.push_back(d);
        mesh.on_boundary.push_back(0);
    }
    if (mid.empty()) return;
    std::vector<std::array<uint32_t, 3>> out;
    out.reserve(mesh.triangles.size() + 2 * mid.size());
    for (const auto& t : mesh.triangles) {
        std::vector<uint32_t> poly;
        for (int k = 0; k < 3; ++k) {
            uint32_t a = t[k], b = t[(k + 1) % 3];
            poly.push_back(a);
            auto it = mid.find({std::min(a, b), std::max(a, b)});
            if (it != mid.end()) poly.push_back(it->second);
        }
        if (poly.size() == 3) out.push_back(t);
        else ear_clip(mesh.points, std::move(poly), out);
    }
    mesh.triangles = std::move(out);
}

}  // namespace

PlanarMesh triangulate_domain(const JordanCurve& curve, size_t resolution, bool with_apex) {
    DistanceField field(curve, resolution);
    const Grid& g = field.grid();
    const auto& val = field.values();
    const double h = g.h;
    auto X = [&](int64_t i) { return g.origin.x + static_cast<double>(i) * h; };
    auto Y = [&](int64_t j) { return g.origin.y + static_cast<double>(j) * h; };
    auto inside = [&](size_t i, size_t j) { return val[g.id(i, j)] > 0; };
    const int64_t nx = static_cast<int64_t>(g.nx), ny = static_cast<int64_t>(g.ny);
    auto cell_id = [&](int64_t i, int64_t j) { return j * (nx - 1) + i; };

    // Boundary walk: curve vertices interleaved with grid-line crossings.
    const auto& v = curve.vertices();
    size_t n = v.size();
    std::vector<BoundaryPoint> walk;
    walk.reserve(4 * n);
    for (size_t k = 0; k < n; ++k) {
        Vec2 a = v[k], b = v[(k + 1) % n];
        walk.push_back({a, -1, -1});
        struct Hit {
            double t;
            BoundaryPoint bp;
        };
        std::vector<Hit> hits;
        // horizontal lines, same predicate and formula as the scanline sign
        {
            int64_t j0 = static_cast<int64_t>(std::floor((std::min(a.y, b.y) - g.origin.y) / h)) - 1;
            int64_t j1 = static_cast<int64_t>(std::ceil((std::max(a.y, b.y) - g.origin.y) / h)) + 1;
            for (int64_t j = std::max<int64_t>(j0, 0); j <= std::min(j1, ny - 1); ++j) {
                double y = Y(j);
                if ((a.y > y) == (b.y > y)) continue;
                double x = a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x);
                int64_t i = static_cast<int64_t>(std::floor((x - g.origin.x) / h));
                while (i > 0 && x < X(i)) --i;
                while (i + 1 < nx && x >= X(i + 1)) ++i;
                double t = (y - a.y) / (b.y - a.y);
                int64_t enter = b.y > a.y ? cell_id(i, j) : cell_id(i, j - 1);
                hits.push_back({t, {{x, y}, 2 * (j * nx + i), enter}});
            }
        }
        {
            int64_t i0 = static_cast<int64_t>(std::floor((std::min(a.x, b.x) - g.origin.x) / h)) - 1;
            int64_t i1 = static_cast<int64_t>(std::ceil((std::max(a.x, b.x) - g.origin.x) / h)) + 1;
            for (int64_t i = std::max<int64_t>(i0, 0); i <= std::min(i1, nx - 1); ++i) {
                double x = X(i);
                if ((a.x > x) == (b.x > x)) continue;
                double y = a.y + (x - a.x) / (b.x - a.x) * (b.y - a.y);
                int64_t j = static_cast<int64_t>(std::floor((y - g.origin.y) / h));
                while (j > 0 && y < Y(j)) --j;
                while (j + 1 < ny && y >= Y(j + 1)) ++j;
                double t = (x - a.x) / (b.x - a.x);
                int64_t enter = b.x > a.x ? cell_id(i, j) : cell_id(i - 1, j);
                hits.push_back({t, {{x, y}, 2 * (j * nx + i) + 1, enter}});
            }
        }
        std::sort(hits.begin(), hits.end(), [](const Hit& p, const Hit& q) { return p.t < q.t; });
        for (size_t q = 1; q < hits.size(); ++q)
            if (hits[q].t == hits[q - 1].t) throw std::runtime_error("triangulation failure: curve passes through a grid node");
        for (auto& hh : hits) walk.push_back(hh.bp);
    }

    PlanarMesh mesh;
    mesh.spacing = h;
    for (const auto& bp : walk) {
        mesh.points.push_back(bp.pos);
        mesh.boundary_distance.push_back(0.0);
        mesh.on_boundary.push_back(1);
    }
    std::vector<uint32_t> node_vid(g.nx * g.ny, PlanarMesh::npos);
    auto node_vertex = [&](int64_t i, int64_t j) {
        size_t id = g.id(static_cast<size_t>(i), static_cast<size_t>(j));
        if (node_vid[id] == PlanarMesh::npos) {
            node_vid[id] = static_cast<uint32_t>(mesh.points.size());
            mesh.points.push_back(g.node(static_cast<size_t>(i), static_cast<size_t>(j)));
            mesh.boundary_distance.push_back(std::abs(val[id]));
            mesh.on_boundary.push_back(0);
        }
        return node_vid[id];
    };

    // Perimeter coordinate in [0,4) of a crossing on the boundary of cell c, counterclockwise from the lower-left corner.
    auto perimeter = [&](int64_t c, const BoundaryPoint& bp) {
        int64_t ci = c % (nx - 1), cj = c / (nx - 1);
        int64_t node = bp.grid_edge / 2;
        int64_t i = node % nx, j = node / nx;
        bool vertical = bp.grid_edge & 1;
        double x0 = X(ci), y0 = Y(cj);
        if (!vertical && i == ci && j == cj) return (bp.pos.x - x0) / h;
        if (vertical && i == ci + 1 && j == cj) return 1.0 + (bp.pos.y - y0) / h;
        if (!vertical && i == ci && j == cj + 1) return 2.0 + (x0 + h - bp.pos.x) / h;
        if (vertical && i == ci && j == cj) return 3.0 + (y0 + h - bp.pos.y) / h;
        throw std::runtime_error("triangulation failure: inconsistent crossing");
    };

    std::vector<size_t> crossings;
    for (size_t k = 0; k < walk.size(); ++k)
        if (walk[k].grid_edge >= 0) crossings.push_back(k);
    if (crossings.empty()) throw std::runtime_error("triangulation failure: resolution too coarse for the curve");

    std::map<int64_t, std::vector<Chain>> cell_chains;
    for (size_t q = 0; q < crossings.size(); ++q) {
        size_t s = crossings[q], e = crossings[(q + 1) % crossings.size()];
        int64_t c = walk[s].enter_cell;
        Chain ch;
        ch.first = s;
        ch.last = e;
        ch.u_in = perimeter(c, walk[s]);
        ch.u_out = perimeter(c, walk[e]);
        cell_chains[c].push_back(ch);
    }

    auto corners = [&](int64_t c) {
        int64_t ci = c % (nx - 1), cj = c / (nx - 1);
        return std::array<std::pair<int64_t, int64_t>, 4>{
            std::make_pair(ci, cj), std::make_pair(ci + 1, cj), std::make_pair(ci + 1, cj + 1),
            std::make_pair(ci, cj + 1)};
    };

    // Apex location.
    Vec2 apex_pos;
    double apex_r = 0.0;
    int64_t apex_cell = -1;
    int64_t snap_i = -1, snap_j = -1;
    auto full_cell = [&](int64_t ci, int64_t cj) {
        if (ci < 0 || cj < 0 || ci + 1 >= nx || cj + 1 >= ny) return false;
        if (cell_chains.count(cell_id(ci, cj))) return false;
        return inside(ci, cj) && inside(ci + 1, cj) && inside(ci + 1, cj + 1) && inside(ci, cj + 1);
    };
    if (with_apex) {
        Inradius ir = inradius(field);
        apex_pos = ir.center;
        apex_r = ir.radius;
        int64_t ci = static_cast<int64_t>(std::floor((apex_pos.x - g.origin.x) / h));
        int64_t cj = static_cast<int64_t>(std::floor((apex_pos.y - g.origin.y) / h));
        int64_t ni = static_cast<int64_t>(std::lround((apex_pos.x - g.origin.x) / h));
        int64_t nj = static_cast<int64_t>(std::lround((apex_pos.y - g.origin.y) / h));
        if (dist(apex_pos, g.node(static_cast<size_t>(std::max<int64_t>(ni, 0)), static_cast<size_t>(std::max<int64_t>(nj, 0)))) <= 0.3 * h &&
            full_cell(ni - 1, nj - 1) && full_cell(ni, nj - 1) && full_cell(ni - 1, nj) && full_cell(ni, nj)) {
            snap_i = ni;
            snap_j = nj;
        } else if (full_cell(ci, cj)) {
            apex_cell = cell_id(ci, cj);
        }
    }

    auto& tris = mesh.triangles;
    for (int64_t cj = 0; cj + 1 < ny; ++cj)
        for (int64_t ci = 0; ci + 1 < nx; ++ci) {
            int64_t c = cell_id(ci, cj);
            auto cn = corners(c);
            auto it = cell_chains.find(c);
            if (it == cell_chains.end()) {
                int in_count = 0;
                for (auto [i, j] : cn) in_count += inside(static_cast<size_t>(i), static_cast<size_t>(j));
                if (in_count == 0) continue;
                if (in_count != 4) throw std::runtime_error("triangulation failure: inconsistent cell signs");
                uint32_t bl = node_vertex(cn[0].first, cn[0].second), br = node_vertex(cn[1].first, cn[1].second),
                         tr = node_vertex(cn[2].first, cn[2].second), tl = node_vertex(cn[3].first, cn[3].second);
                if (c == apex_cell) {
                    auto a = static_cast<uint32_t>(mesh.points.size());
                    mesh.points.push_back(apex_pos);
                    mesh.boundary_distance.push_back(apex_r);
                    mesh.on_boundary.push_back(0);
                    mesh.apex = a;
                    tris.push_back({bl, br, a});
                    tris.push_back({br, tr, a});
                    tris.push_back({tr, tl, a});
                    tris.push_back({tl, bl, a});
                    continue;
                }
                // Diagonals radiate from the apex so creases of cone-like lifts are followed.
                Vec2 mid = g.node(static_cast<size_t>(ci), static_cast<size_t>(cj)) + Vec2{0.5 * h, 0.5 * h};
                Vec2 ref = with_apex ? apex_pos : mid;
                if ((mid.x - ref.x) * (mid.y - ref.y) >= 0) {
                    tris.push_back({bl, br, tr});
                    tris.push_back({bl, tr, tl});
                } else {
                    tris.push_back({bl, br, tl});
                    tris.push_back({br, tr, tl});
                }
                continue;
            }

            auto& chains = it->second;
            // parity check against corner signs on each side
            std::array<int, 4> side_hits{0, 0, 0, 0};
            for (const auto& ch : chains) {
                ++side_hits[std::min(3, static_cast<int>(ch.u_in))];
                ++side_hits[std::min(3, static_cast<int>(ch.u_out))];
            }
            for (int s = 0; s < 4; ++s) {
                bool a = inside(static_cast<size_t>(cn[s].first), static_cast<size_t>(cn[s].second));
                bool b = inside(static_cast<size_t>(cn[(s + 1) % 4].first), static_cast<size_t>(cn[(s + 1) % 4].second));
                if ((side_hits[s] % 2 == 1) != (a != b)) throw std::runtime_error("triangulation failure: inconsistent crossings");
            }
            std::vector<uint8_t> used(chains.size(), 0);
            for (size_t c0 = 0; c0 < chains.size(); ++c0) {
                if (used[c0]) continue;
                std::vector<uint32_t> poly;
                size_t cur = c0;
                for (size_t guard = 0; guard <= chains.size(); ++guard) {
                    used[cur] = 1;
                    const Chain& ch = chains[cur];
                    for (size_t k = ch.first;; k = (k + 1) % walk.size()) {
                        poly.push_back(static_cast<uint32_t>(k));
                        if (k == ch.last) break;
                    }
                    double u_out = ch.u_out;
                    size_t nxt = chains.size();
                    double best = 5.0;
                    for (size_t o = 0; o < chains.size(); ++o) {
                        double du = chains[o].u_in - u_out;
                        if (du <= 0) du += 4.0;
                        if (du < best) {
                            best = du;
                            nxt = o;
                        }
                    }
                    for (int s = 1; s <= 4; ++s) {
                        double du = std::ceil(u_out) + (s - 1) - u_out;
                        if (du <= 0) continue;
                        if (du >= best) break;
                        int corner = static_cast<int>(std::ceil(u_out) + (s - 1)) % 4;
                        auto [i, j] = cn[corner];
                        if (!inside(static_cast<size_t>(i), static_cast<size_t>(j)))
                            throw std::runtime_error("triangulation failure: outside corner in clipped piece");
                        poly.push_back(node_vertex(i, j));
                    }
                    cur = nxt;
                    if (cur == c0) break;
                    if (used[cur]) throw std::runtime_error("triangulation failure: chain cycle");
                }
                ear_clip(mesh.points, std::move(poly), tris);
            }
        }

    split_boundary_chords(curve, mesh);

    if (snap_i >= 0) {
        uint32_t id = node_vid[g.id(static_cast<size_t>(snap_i), static_cast<size_t>(snap_j))];
        mesh.points[id] = apex_pos;
        mesh.boundary_distance[id] = apex_r;
        mesh.apex = id;
    }
    return mesh;
}

}  // namespace qsdome
