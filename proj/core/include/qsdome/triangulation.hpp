#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "qsdome/curve.hpp"

namespace qsdome {

// Conforming triangulation of the closed region bounded by a Jordan curve.
// The boundary walk (curve vertices interleaved with grid-line crossings, in curve order) comes first,
// followed by interior nodes.
struct PlanarMesh {
    static constexpr uint32_t npos = std::numeric_limits<uint32_t>::max();

    std::vector<Vec2> points;
    std::vector<double> boundary_distance;
    std::vector<uint8_t> on_boundary;
    std::vector<std::array<uint32_t, 3>> triangles;  // counterclockwise
    uint32_t apex = npos;
    double spacing = 0.0;

    double area() const;
};

// Grid cells strictly inside are split in two; boundary cells are clipped against the curve and
// ear-clipped. With `with_apex`, the inradius center becomes a vertex when it lies in an interior cell.
// Throws std::runtime_error when the crossings are degenerate or the curve fits inside one cell.
PlanarMesh triangulate_domain(const JordanCurve& curve, size_t resolution, bool with_apex = true);

// Ear clipping of a simple counterclockwise polygon given by indices into `pts`.
void ear_clip(const std::vector<Vec2>& pts, std::vector<uint32_t> poly,
              std::vector<std::array<uint32_t, 3>>& out);

}  // namespace qsdome
