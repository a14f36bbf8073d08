#include "qsdome/mesh.hpp"

#include <algorithm>
#include <map>
#include <ostream>

namespace qsdome {

double SurfaceMesh::triangle_area(size_t t) const {
    const auto& f = triangles[t];
    return 0.5 * norm(cross(vertices[f[1]] - vertices[f[0]], vertices[f[2]] - vertices[f[0]]));
}

double SurfaceMesh::area() const {
    double s = 0.0;
    for (size_t t = 0; t < triangles.size(); ++t) s += triangle_area(t);
    return s;
}

double SurfaceMesh::volume() const {
    double s = 0.0;
    for (const auto& f : triangles) s += dot(vertices[f[0]], cross(vertices[f[1]], vertices[f[2]]));
    return s / 6.0;
}

MeshTopology mesh_topology(const SurfaceMesh& mesh) {
    // key: lo<<32|hi, with the low bit of the payload recording direction
    std::vector<std::pair<uint64_t, bool>> e;
    e.reserve(3 * mesh.triangles.size());
    for (const auto& f : mesh.triangles)
        for (int k = 0; k < 3; ++k) {
            uint32_t a = f[k], b = f[(k + 1) % 3];
            uint64_t lo = std::min(a, b), hi = std::max(a, b);
            e.emplace_back((lo << 32) | hi, a < b);
        }
    std::sort(e.begin(), e.end());
    MeshTopology topo;
    for (size_t i = 0; i < e.size();) {
        size_t j = i;
        while (j < e.size() && e[j].first == e[i].first) ++j;
        ++topo.edges;
        size_t uses = j - i;
        if (uses == 1) ++topo.boundary_edges;
        else if (uses > 2 || e[i].second == e[i + 1].second) ++topo.nonmanifold_edges;
        i = j;
    }
    return topo;
}

long euler_characteristic(const SurfaceMesh& mesh) {
    std::vector<uint8_t> used(mesh.vertices.size(), 0);
    for (const auto& f : mesh.triangles)
        for (auto v : f) used[v] = 1;
    long V = std::count(used.begin(), used.end(), 1);
    long E = static_cast<long>(mesh_topology(mesh).edges);
    long F = static_cast<long>(mesh.triangles.size());
    return V - E + F;
}

std::vector<std::pair<uint32_t, uint32_t>> mesh_edges(const SurfaceMesh& mesh) {
    std::vector<std::pair<uint32_t, uint32_t>> e;
    e.reserve(3 * mesh.triangles.size());
    for (const auto& f : mesh.triangles)
        for (int k = 0; k < 3; ++k) {
            uint32_t a = f[k], b = f[(k + 1) % 3];
            e.emplace_back(std::min(a, b), std::max(a, b));
        }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return e;
}

double median_edge_length(const SurfaceMesh& mesh) {
    auto e = mesh_edges(mesh);
    if (e.empty()) return 0.0;
    std::vector<double> len(e.size());
    for (size_t i = 0; i < e.size(); ++i) len[i] = dist(mesh.vertices[e[i].first], mesh.vertices[e[i].second]);
    std::nth_element(len.begin(), len.begin() + len.size() / 2, len.end());
    return len[len.size() / 2];
}

SurfaceMesh sphere_mesh(double r, int subdivisions) {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> v{{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                        {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    std::vector<std::array<uint32_t, 3>> f{{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                           {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                           {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                           {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    auto unit = [](Vec3 p) { return p * (1.0 / norm(p)); };
    for (auto& p : v) p = unit(p);
    for (int s = 0; s < subdivisions; ++s) {
        std::map<std::pair<uint32_t, uint32_t>, uint32_t> mid;
        auto midpoint = [&](uint32_t a, uint32_t b) {
            auto key = std::make_pair(std::min(a, b), std::max(a, b));
            auto it = mid.find(key);
            if (it != mid.end()) return it->second;
            auto id = static_cast<uint32_t>(v.size());
            v.push_back(unit((v[a] + v[b]) * 0.5));
            mid.emplace(key, id);
            return id;
        };
        std::vector<std::array<uint32_t, 3>> g;
        g.reserve(4 * f.size());
        for (const auto& tri : f) {
            uint32_t a = midpoint(tri[0], tri[1]), b = midpoint(tri[1], tri[2]), c = midpoint(tri[2], tri[0]);
            g.push_back({tri[0], a, c});
            g.push_back({tri[1], b, a});
            g.push_back({tri[2], c, b});
            g.push_back({a, b, c});
        }
        f = std::move(g);
    }
    SurfaceMesh m;
    for (auto& p : v) {
        m.vertices.push_back(p * r);
        m.planar.push_back({p.x * r, p.y * r});
        m.tags.push_back(p.z > 0 ? VertexTag::upper : (p.z < 0 ? VertexTag::lower : VertexTag::equator));
        m.boundary_distance.push_back(0.0);
    }
    m.triangles = std::move(f);
    return m;
}

void write_obj(const SurfaceMesh& mesh, std::ostream& os) {
    os.precision(17);
    os << "# vertices " << mesh.vertices.size() << " faces " << mesh.triangles.size() << "\n";
    for (const auto& p : mesh.vertices) os << "v " << p.x << ' ' << p.y << ' ' << p.z << "\n";
    for (const auto& f : mesh.triangles) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << "\n";
}

void write_ply(const SurfaceMesh& mesh, std::ostream& os) {
    os.precision(17);
    os << "ply\nformat ascii 1.0\n";
    os << "element vertex " << mesh.vertices.size() << "\n";
    os << "property double x\nproperty double y\nproperty double z\n";
    os << "element face " << mesh.triangles.size() << "\n";
    os << "property list uchar int vertex_indices\nend_header\n";
    for (const auto& p : mesh.vertices) os << p.x << ' ' << p.y << ' ' << p.z << "\n";
    for (const auto& f : mesh.triangles) os << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << "\n";
}

}  // namespace qsdome
