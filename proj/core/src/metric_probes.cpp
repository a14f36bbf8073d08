#include "qsdome/metric_probes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qsdome/parallel.hpp"
#include "qsdome/surface.hpp"

namespace qsdome {

std::string to_string(ProbeKind k) {
    switch (k) {
        case ProbeKind::llc1: return "llc1";
        case ProbeKind::llc2: return "llc2";
        case ProbeKind::regularity: return "regularity";
    }
    return "unknown";
}

double ProbeReport::max_lambda_at(double r) const {
    double m = 1.0;
    for (const auto& s : samples)
        if (s.r == r) m = std::max(m, s.value);
    return m;
}

std::vector<double> default_lambda_grid() { return {1, 1.25, 1.5, 2, 3, 5, 8, 16, 32, 64}; }

std::vector<uint32_t> default_centers(const SurfaceMesh& mesh, size_t count) {
    std::vector<uint32_t> order(mesh.vertices.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        return std::abs(mesh.vertices[a].z) < std::abs(mesh.vertices[b].z);
    });
    std::vector<uint32_t> out;
    size_t n = order.size();
    for (size_t k = 0; k < count && n > 0; ++k) {
        double u = (static_cast<double>(k) + 0.5) / static_cast<double>(count);
        size_t idx = std::min(n - 1, static_cast<size_t>(u * u * static_cast<double>(n)));
        out.push_back(order[idx]);
    }
    return out;
}

namespace {

double bbox_diagonal(const SurfaceMesh& mesh) {
    Vec3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
    Vec3 hi = lo * -1.0;
    for (const auto& p : mesh.vertices) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    return norm(hi - lo);
}

struct UnionFind {
    std::vector<uint32_t> parent;
    std::vector<uint8_t> target;
    size_t target_components = 0;
    explicit UnionFind(size_t n) : parent(n), target(n, 0) { std::iota(parent.begin(), parent.end(), 0u); }
    uint32_t find(uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void mark(uint32_t x) {
        if (!target[x]) {
            target[x] = 1;
            ++target_components;
        }
    }
    void unite(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        if (target[a] && target[b]) --target_components;
        target[a] |= target[b];
        parent[b] = a;
    }
};

struct SampleGraph {
    size_t base = 0;
    std::vector<Vec3> extra;
    std::vector<std::array<uint32_t, 2>> pieces;
    std::vector<double> key;
};

SampleGraph build_graph(const SurfaceMesh& mesh, const std::vector<std::pair<uint32_t, uint32_t>>& edges, Vec3 x,
                        double r, ProbeKind kind, double subdivision) {
    SampleGraph g;
    g.base = mesh.vertices.size();
    g.pieces.reserve(edges.size());
    double max_piece = r / subdivision;
    auto pos = [&](uint32_t id) { return id < g.base ? mesh.vertices[id] : g.extra[id - g.base]; };
    auto add = [&](uint32_t a, uint32_t b) {
        Vec3 pa = pos(a), pb = pos(b);
        g.pieces.push_back({a, b});
        g.key.push_back(kind == ProbeKind::llc1 ? std::max(dist(pa, x), dist(pb, x)) : point_segment_dist(x, pa, pb));
    };
    for (auto [a, b] : edges) {
        Vec3 pa = mesh.vertices[a], pb = mesh.vertices[b];
        double L = dist(pa, pb);
        if (L <= max_piece || point_segment_dist(x, pa, pb) >= 2.0 * r) {
            add(a, b);
            continue;
        }
        auto k = static_cast<size_t>(std::ceil(L / max_piece));
        uint32_t prev = a;
        for (size_t i = 1; i < k; ++i) {
            auto id = static_cast<uint32_t>(g.base + g.extra.size());
            g.extra.push_back(pa + (pb - pa) * (static_cast<double>(i) / static_cast<double>(k)));
            add(prev, id);
            prev = id;
        }
        add(prev, b);
    }
    return g;
}

// First grid index at which a piece with this key is present.
size_t piece_level(double key, double r, ProbeKind kind, const std::vector<double>& grid) {
    if (kind == ProbeKind::llc1) return static_cast<size_t>(std::upper_bound(grid.begin(), grid.end(), key / r) - grid.begin());
    if (key <= 0.0) return grid.size();
    return static_cast<size_t>(std::lower_bound(grid.begin(), grid.end(), r / key) - grid.begin());
}

bool is_target(double d, double r, ProbeKind kind) { return kind == ProbeKind::llc1 ? d < r : d >= r; }

ProbeSample llc_sample(const SurfaceMesh& mesh, const std::vector<std::pair<uint32_t, uint32_t>>& edges, uint32_t c,
                       double r, ProbeKind kind, const LlcOptions& opt) {
    ProbeSample s;
    s.center_vertex = c;
    s.center = mesh.vertices[c];
    s.r = r;
    const auto& grid = opt.lambda_grid;
    SampleGraph g = build_graph(mesh, edges, s.center, r, kind, opt.subdivision);
    size_t n = g.base + g.extra.size();
    auto pos = [&](uint32_t id) { return id < g.base ? mesh.vertices[id] : g.extra[id - g.base]; };
    UnionFind uf(n);
    std::vector<uint32_t> targets;
    for (uint32_t v = 0; v < n; ++v)
        if (is_target(dist(pos(v), s.center), r, kind)) {
            targets.push_back(v);
            uf.mark(v);
        }
    std::vector<std::vector<uint32_t>> bucket(grid.size());
    for (size_t p = 0; p < g.pieces.size(); ++p) {
        size_t lv = piece_level(g.key[p], r, kind, grid);
        if (lv < grid.size()) bucket[lv].push_back(static_cast<uint32_t>(p));
    }
    s.value = std::numeric_limits<double>::infinity();
    s.feasible = false;
    for (size_t lv = 0; lv < grid.size(); ++lv) {
        for (uint32_t p : bucket[lv]) uf.unite(g.pieces[p][0], g.pieces[p][1]);
        if (uf.target_components <= 1) {
            s.value = grid[lv];
            s.feasible = true;
            break;
        }
        uint32_t root0 = uf.find(targets.front());
        for (uint32_t t : targets)
            if (uf.find(t) != root0) {
                s.witness = LlcWitness{pos(targets.front()), pos(t), grid[lv]};
                break;
            }
    }
    return s;
}

void require_connected(const SurfaceMesh& mesh, const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
    UnionFind uf(mesh.vertices.size());
    for (auto [a, b] : edges) uf.unite(a, b);
    std::vector<uint8_t> used(mesh.vertices.size(), 0);
    for (const auto& f : mesh.triangles)
        for (auto v : f) used[v] = 1;
    std::optional<uint32_t> root;
    for (uint32_t v = 0; v < mesh.vertices.size(); ++v) {
        if (!used[v]) continue;
        uint32_t rv = uf.find(v);
        if (!root) root = rv;
        else if (*root != rv) throw std::invalid_argument("llc probe: mesh is disconnected");
    }
    if (!root) throw std::invalid_argument("llc probe: empty mesh");
}

void validate_grid(const std::vector<double>& grid) {
    if (grid.empty() || grid.front() < 1.0) throw std::invalid_argument("lambda grid must start at or above 1");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("lambda grid must be increasing");
}

}  // namespace

std::vector<double> default_radii(const SurfaceMesh& mesh, size_t count, double lo, double hi) {
    if (hi <= 0) hi = 0.5 * bbox_diagonal(mesh);
    if (lo <= 0) lo = 10.0 * median_edge_length(mesh);
    std::vector<double> out;
    for (double r = hi; r >= lo && out.size() < count; r *= 0.5) out.push_back(r);
    return out;
}

ProbeReport llc_probe(const SurfaceMesh& mesh, const std::vector<uint32_t>& centers, const std::vector<double>& radii,
                      ProbeKind kind, const LlcOptions& opt) {
    if (kind == ProbeKind::regularity) throw std::invalid_argument("llc_probe needs an llc kind");
    validate_grid(opt.lambda_grid);
    auto edges = mesh_edges(mesh);
    require_connected(mesh, edges);
    for (double r : radii)
        if (!(r > 0)) throw std::invalid_argument("llc probe radii must be positive");
    for (auto c : centers)
        if (c >= mesh.vertices.size()) throw std::invalid_argument("llc probe center is not a mesh vertex");
    ProbeReport rep;
    rep.kind = kind;
    rep.lambda_grid = opt.lambda_grid;
    rep.samples.resize(centers.size() * radii.size());
    parallel_for(rep.samples.size(), [&](size_t i) {
        rep.samples[i] = llc_sample(mesh, edges, centers[i / radii.size()], radii[i % radii.size()], kind, opt);
    });
    for (const auto& s : rep.samples) {
        rep.max_lambda = std::max(rep.max_lambda, s.value);
        rep.all_feasible = rep.all_feasible && s.feasible;
    }
    return rep;
}

bool llc_pair_connected(const SurfaceMesh& mesh, Vec3 center, double r, double lambda, ProbeKind kind, Vec3 a, Vec3 b,
                        const LlcOptions& opt) {
    auto edges = mesh_edges(mesh);
    SampleGraph g = build_graph(mesh, edges, center, r, kind, opt.subdivision);
    size_t n = g.base + g.extra.size();
    auto pos = [&](uint32_t id) { return id < g.base ? mesh.vertices[id] : g.extra[id - g.base]; };
    std::optional<uint32_t> ia, ib;
    for (uint32_t v = 0; v < n; ++v) {
        Vec3 p = pos(v);
        if (!ia && p == a) ia = v;
        if (!ib && p == b) ib = v;
    }
    if (!ia || !ib) throw std::invalid_argument("llc pair is not a graph node");
    UnionFind uf(n);
    for (size_t p = 0; p < g.pieces.size(); ++p) {
        bool in = kind == ProbeKind::llc1 ? g.key[p] < lambda * r : g.key[p] >= r / lambda;
        if (in) uf.unite(g.pieces[p][0], g.pieces[p][1]);
    }
    return uf.find(*ia) == uf.find(*ib);
}

struct BallAreaIndex::Impl {
    struct Node {
        Vec3 lo, hi;
        double area = 0.0;
        uint32_t left = 0, right = 0;  // children, or [left, right) triangle range for leaves
        bool leaf = false;
    };
    const SurfaceMesh* mesh = nullptr;
    std::vector<uint32_t> tri;
    std::vector<double> tri_area;
    std::vector<Node> nodes;

    uint32_t build(std::vector<Vec3>& centroid, uint32_t first, uint32_t last) {
        Node nd;
        nd.lo = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity()};
        nd.hi = nd.lo * -1.0;
        for (uint32_t i = first; i < last; ++i) {
            const auto& f = mesh->triangles[tri[i]];
            for (auto v : f) {
                Vec3 p = mesh->vertices[v];
                nd.lo = {std::min(nd.lo.x, p.x), std::min(nd.lo.y, p.y), std::min(nd.lo.z, p.z)};
                nd.hi = {std::max(nd.hi.x, p.x), std::max(nd.hi.y, p.y), std::max(nd.hi.z, p.z)};
            }
            nd.area += tri_area[tri[i]];
        }
        auto id = static_cast<uint32_t>(nodes.size());
        nodes.push_back(nd);
        if (last - first <= 8) {
            nodes[id].leaf = true;
            nodes[id].left = first;
            nodes[id].right = last;
            return id;
        }
        Vec3 ext = nd.hi - nd.lo;
        int axis = ext.x >= ext.y && ext.x >= ext.z ? 0 : (ext.y >= ext.z ? 1 : 2);
        auto coord = [&](uint32_t t) {
            const Vec3& c = centroid[t];
            return axis == 0 ? c.x : (axis == 1 ? c.y : c.z);
        };
        uint32_t mid = first + (last - first) / 2;
        std::nth_element(tri.begin() + first, tri.begin() + mid, tri.begin() + last,
                         [&](uint32_t a, uint32_t b) { return coord(a) < coord(b); });
        uint32_t l = build(centroid, first, mid);
        uint32_t r = build(centroid, mid, last);
        nodes[id].left = l;
        nodes[id].right = r;
        return id;
    }
};

BallAreaIndex::BallAreaIndex(const SurfaceMesh& mesh) : impl_(std::make_unique<Impl>()) {
    impl_->mesh = &mesh;
    size_t F = mesh.triangles.size();
    impl_->tri.resize(F);
    std::iota(impl_->tri.begin(), impl_->tri.end(), 0u);
    impl_->tri_area.resize(F);
    std::vector<Vec3> centroid(F);
    for (size_t t = 0; t < F; ++t) {
        impl_->tri_area[t] = mesh.triangle_area(t);
        const auto& f = mesh.triangles[t];
        centroid[t] = (mesh.vertices[f[0]] + mesh.vertices[f[1]] + mesh.vertices[f[2]]) * (1.0 / 3.0);
    }
    impl_->nodes.reserve(F / 4 + 16);
    if (F > 0) impl_->build(centroid, 0, static_cast<uint32_t>(F));
}

BallAreaIndex::~BallAreaIndex() = default;
BallAreaIndex::BallAreaIndex(BallAreaIndex&&) noexcept = default;
BallAreaIndex& BallAreaIndex::operator=(BallAreaIndex&&) noexcept = default;

double BallAreaIndex::area(Vec3 c, double r) const {
    const auto& nodes = impl_->nodes;
    if (nodes.empty()) return 0.0;
    const SurfaceMesh& m = *impl_->mesh;
    double r2 = r * r;
    double total = 0.0;
    std::vector<uint32_t> stack{0};
    while (!stack.empty()) {
        const auto& nd = nodes[stack.back()];
        stack.pop_back();
        auto clampd = [](double v, double lo, double hi) { return v < lo ? lo - v : (v > hi ? v - hi : 0.0); };
        double dx = clampd(c.x, nd.lo.x, nd.hi.x), dy = clampd(c.y, nd.lo.y, nd.hi.y), dz = clampd(c.z, nd.lo.z, nd.hi.z);
        if (dx * dx + dy * dy + dz * dz >= r2) continue;
        double fx = std::max(std::abs(c.x - nd.lo.x), std::abs(c.x - nd.hi.x));
        double fy = std::max(std::abs(c.y - nd.lo.y), std::abs(c.y - nd.hi.y));
        double fz = std::max(std::abs(c.z - nd.lo.z), std::abs(c.z - nd.hi.z));
        if (fx * fx + fy * fy + fz * fz <= r2) {
            total += nd.area;
            continue;
        }
        if (!nd.leaf) {
            stack.push_back(nd.left);
            stack.push_back(nd.right);
            continue;
        }
        for (uint32_t i = nd.left; i < nd.right; ++i) {
            const auto& f = m.triangles[impl_->tri[i]];
            total += triangle_ball_area(m.vertices[f[0]], m.vertices[f[1]], m.vertices[f[2]], c, r);
        }
    }
    return total;
}

ProbeReport regularity_probe(const SurfaceMesh& mesh, const std::vector<uint32_t>& centers,
                             const std::vector<double>& radii) {
    if (!mesh_topology(mesh).closed()) throw std::invalid_argument("regularity probe: mesh is not closed");
    double lo = 10.0 * median_edge_length(mesh), hi = bbox_diagonal(mesh);
    for (double r : radii)
        if (r < lo * (1 - 1e-12) || r > hi) throw std::invalid_argument("regularity probe: radius outside [10 edge lengths, diameter]");
    for (auto c : centers)
        if (c >= mesh.vertices.size()) throw std::invalid_argument("regularity probe center is not a mesh vertex");
    BallAreaIndex index(mesh);
    ProbeReport rep;
    rep.kind = ProbeKind::regularity;
    rep.samples.resize(centers.size() * radii.size());
    parallel_for(rep.samples.size(), [&](size_t i) {
        ProbeSample& s = rep.samples[i];
        s.center_vertex = centers[i / radii.size()];
        s.center = mesh.vertices[s.center_vertex];
        s.r = radii[i % radii.size()];
        s.value = index.area(s.center, s.r) / (s.r * s.r);
    });
    rep.min_ratio = std::numeric_limits<double>::infinity();
    for (const auto& s : rep.samples) {
        rep.min_ratio = std::min(rep.min_ratio, s.value);
        rep.max_ratio = std::max(rep.max_ratio, s.value);
    }
    return rep;
}

NecessityReport necessity_check(const JordanCurve& curve, const Gauge& gauge, size_t resolution, size_t centers,
                                size_t radii) {
    if (gauge.kind() != GaugeKind::identity) throw std::invalid_argument("necessity check uses the identity gauge");
    SurfaceMesh mesh = build_surface(curve, gauge, resolution);
    auto cs = default_centers(mesh, centers);
    auto rs = default_radii(mesh, radii);
    NecessityReport rep;
    rep.llc1 = llc_probe(mesh, cs, rs, ProbeKind::llc1);
    rep.llc2 = llc_probe(mesh, cs, rs, ProbeKind::llc2);
    rep.lambda_hat = std::max(rep.llc1.max_lambda, rep.llc2.max_lambda);
    rep.C_hat = two_point_constant(curve).value;
    rep.bound = 1.5 * 32.0 * rep.lambda_hat * rep.lambda_hat;
    rep.holds = rep.C_hat <= rep.bound;
    return rep;
}

}  // namespace qsdome
