#include "qsdome/spatial.hpp"

#include <algorithm>
#include <numeric>

namespace qsdome {

SegmentIndex::SegmentIndex(std::vector<Segment> segments) : segments_(std::move(segments)) {
    order_.resize(segments_.size());
    std::iota(order_.begin(), order_.end(), 0u);
    if (!segments_.empty()) {
        nodes_.reserve(2 * segments_.size() / 4 + 2);
        build(0, static_cast<uint32_t>(segments_.size()));
    }
}

SegmentIndex SegmentIndex::from_loops(const std::vector<std::vector<Vec2>>& loops) {
    std::vector<Segment> segs;
    for (const auto& loop : loops) {
        size_t n = loop.size();
        for (size_t i = 0; i < n; ++i) segs.push_back({loop[i], loop[(i + 1) % n]});
    }
    return SegmentIndex(std::move(segs));
}

int32_t SegmentIndex::build(uint32_t begin, uint32_t end) {
    Node node;
    node.begin = begin;
    node.end = end;
    BBox cbox;
    for (uint32_t i = begin; i < end; ++i) {
        const auto& s = segments_[order_[i]];
        node.box.add(s.a);
        node.box.add(s.b);
        cbox.add((s.a + s.b) * 0.5);
    }
    auto idx = static_cast<int32_t>(nodes_.size());
    nodes_.push_back(node);
    if (end - begin <= 4) return idx;
    bool split_x = cbox.width() >= cbox.height();
    uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](uint32_t l, uint32_t r) {
                         const auto& s = segments_[l];
                         const auto& t = segments_[r];
                         return split_x ? s.a.x + s.b.x < t.a.x + t.b.x : s.a.y + s.b.y < t.a.y + t.b.y;
                     });
    int32_t l = build(begin, mid);
    int32_t r = build(mid, end);
    nodes_[idx].left = l;
    nodes_[idx].right = r;
    return idx;
}

SegmentIndex::Hit SegmentIndex::nearest(Vec2 p, double upper) const {
    Hit hit;
    if (nodes_.empty()) return hit;
    double best2 = std::isfinite(upper) ? upper * upper : std::numeric_limits<double>::infinity();
    bool found = false;
    int32_t stack[128];
    int sp = 0;
    stack[sp++] = 0;
    while (sp > 0) {
        const Node& n = nodes_[stack[--sp]];
        if (n.box.dist2(p) > best2) continue;
        if (n.left < 0) {
            for (uint32_t i = n.begin; i < n.end; ++i) {
                const auto& s = segments_[order_[i]];
                double t = closest_param(p, s.a, s.b);
                Vec2 q = lerp(s.a, s.b, t);
                double d2 = dist2(p, q);
                if (d2 < best2 || (!found && d2 <= best2)) {
                    best2 = d2;
                    found = true;
                    hit.segment = order_[i];
                    hit.t = t;
                    hit.point = q;
                }
            }
            continue;
        }
        double dl = nodes_[n.left].box.dist2(p);
        double dr = nodes_[n.right].box.dist2(p);
        if (dl < dr) {
            stack[sp++] = n.right;
            stack[sp++] = n.left;
        } else {
            stack[sp++] = n.left;
            stack[sp++] = n.right;
        }
    }
    if (!found) {
        // upper bound was too tight; retry unbounded
        if (std::isfinite(upper)) return nearest(p);
        return hit;
    }
    hit.dist = std::sqrt(best2);
    return hit;
}

}  // namespace qsdome

namespace qsdome {

namespace {

double directed(const std::vector<Vec2>& a, const SegmentIndex& b, double spacing) {
    double worst = 0.0;
    size_t n = a.size();
    for (size_t i = 0; i < n; ++i) {
        Vec2 p = a[i], q = a[(i + 1) % n];
        auto m = static_cast<size_t>(std::max(1.0, std::ceil(dist(p, q) / spacing)));
        for (size_t k = 0; k < m; ++k)
            worst = std::max(worst, b.distance(lerp(p, q, static_cast<double>(k) / static_cast<double>(m))));
    }
    return worst;
}

}  // namespace

double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b, double spacing) {
    SegmentIndex ia = SegmentIndex::from_loops({a});
    SegmentIndex ib = SegmentIndex::from_loops({b});
    return std::max(directed(a, ib, spacing), directed(b, ia, spacing));
}

}  // namespace qsdome
