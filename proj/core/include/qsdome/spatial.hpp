#pragma once

#include <cstdint>
#include <vector>

#include "qsdome/geometry.hpp"

namespace qsdome {

// Bounding-volume hierarchy over planar segments for exact nearest queries.
class SegmentIndex {
public:
    struct Segment {
        Vec2 a;
        Vec2 b;
    };
    struct Hit {
        double dist = std::numeric_limits<double>::infinity();
        size_t segment = 0;
        double t = 0.0;
        Vec2 point;
    };

    SegmentIndex() = default;
    explicit SegmentIndex(std::vector<Segment> segments);
    // Segments of closed loops, numbered loop by loop, edge i joins vertex i and i+1.
    static SegmentIndex from_loops(const std::vector<std::vector<Vec2>>& loops);

    Hit nearest(Vec2 p, double upper = std::numeric_limits<double>::infinity()) const;
    double distance(Vec2 p) const { return nearest(p).dist; }
    size_t size() const { return segments_.size(); }
    bool empty() const { return segments_.empty(); }
    const Segment& segment(size_t i) const { return segments_[i]; }

private:
    struct Node {
        BBox box;
        int32_t left = -1;
        int32_t right = -1;
        uint32_t begin = 0;
        uint32_t end = 0;
    };
    int32_t build(uint32_t begin, uint32_t end);

    std::vector<Segment> segments_;
    std::vector<uint32_t> order_;
    std::vector<Node> nodes_;
};

}  // namespace qsdome

namespace qsdome {

// Symmetric Hausdorff distance between two closed polylines, both densified to the given spacing.
double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b, double spacing);

}  // namespace qsdome
