#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qsdome/geometry.hpp"

namespace qsdome {

enum class VertexTag : uint8_t { upper, lower, equator };

struct SurfaceMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<uint32_t, 3>> triangles;
    std::vector<VertexTag> tags;
    std::vector<Vec2> planar;                // pi(v)
    std::vector<double> boundary_distance;  // dist(pi(v), boundary)

    double area() const;
    // Signed volume by the divergence theorem; positive for outward orientation.
    double volume() const;
    double triangle_area(size_t t) const;
};

struct MeshTopology {
    size_t edges = 0;
    size_t boundary_edges = 0;     // used by exactly one triangle
    size_t nonmanifold_edges = 0;  // used by more than two, or twice with equal orientation
    bool closed() const { return boundary_edges == 0 && nonmanifold_edges == 0; }
};

MeshTopology mesh_topology(const SurfaceMesh& mesh);
long euler_characteristic(const SurfaceMesh& mesh);
double median_edge_length(const SurfaceMesh& mesh);
// Undirected edges as (lo, hi) pairs, sorted.
std::vector<std::pair<uint32_t, uint32_t>> mesh_edges(const SurfaceMesh& mesh);

// Icosphere of radius r after `subdivisions` 4-way splits.
SurfaceMesh sphere_mesh(double r, int subdivisions);

void write_obj(const SurfaceMesh& mesh, std::ostream& os);
void write_ply(const SurfaceMesh& mesh, std::ostream& os);

}  // namespace qsdome
