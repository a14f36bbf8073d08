#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsdome/geometry.hpp"
#include "qsdome/spatial.hpp"

namespace qsdome {

struct CurvePoint {
    size_t edge = 0;
    double t = 0.0;
    Vec2 position;
};

// Oriented (counterclockwise) simple closed polyline.
class JordanCurve {
public:
    explicit JordanCurve(std::vector<Vec2> vertices);

    size_t size() const { return v_.size(); }
    const std::vector<Vec2>& vertices() const { return v_; }
    Vec2 vertex(size_t i) const { return v_[i % v_.size()]; }
    double length() const { return cum_.back(); }
    double edge_length(size_t i) const { return cum_[i + 1] - cum_[i]; }
    // Arc-length coordinate of vertex i measured from vertex 0; cumulative()[size()] == length().
    const std::vector<double>& cumulative() const { return cum_; }
    double signed_area() const { return area_; }
    const BBox& bbox() const { return box_; }
    double diameter() const { return diam_; }
    double median_edge_length() const;

    CurvePoint point(size_t edge, double t) const;
    CurvePoint at_arc(double s) const;
    double arc_param(const CurvePoint& p) const;

    double distance(Vec2 p) const { return index_.distance(p); }
    CurvePoint closest(Vec2 p) const;
    bool contains(Vec2 p) const { return point_in_polygon(v_, p); }
    const SegmentIndex& index() const { return index_; }

    // Vertices of the counterclockwise arc from s0 to s1 (wrapping), endpoints included.
    std::vector<Vec2> arc_polyline(double s0, double s1) const;

    // First pair of non-adjacent intersecting edges, if any.
    static std::optional<std::pair<size_t, size_t>> self_intersection(const std::vector<Vec2>& pts);

private:
    std::vector<Vec2> v_;
    std::vector<double> cum_;
    double area_ = 0.0;
    double diam_ = 0.0;
    BBox box_;
    SegmentIndex index_;
};

double arc_length(const JordanCurve& curve);

enum class SubarcSide { smaller_diameter, complement };

struct Subarc {
    CurvePoint start;
    CurvePoint end;
    SubarcSide which = SubarcSide::smaller_diameter;
    std::vector<Vec2> polyline;
    double diameter = 0.0;
    double length = 0.0;
};

// {smaller-diameter arc, complement}; ties go to the arc whose arc-length midpoint is lexicographically smaller.
std::pair<Subarc, Subarc> subarc_split(const JordanCurve& curve, const CurvePoint& x, const CurvePoint& y);
Subarc subarc(const JordanCurve& curve, const CurvePoint& x, const CurvePoint& y);

double chordal_flatness(const JordanCurve& curve, const CurvePoint& x, const CurvePoint& y);

struct SampleOptions {
    size_t min_samples = 1024;
    size_t max_samples = 4096;
    int refine_rounds = 3;
};

struct ConstantReport {
    std::string constant_name;
    double value = 1.0;
    CurvePoint argmax_x;
    CurvePoint argmax_y;
    double scale = 0.0;
    size_t samples = 0;
};

double default_scale_floor(const JordanCurve& curve);

// Pass scale_floor <= 0 for the default floor.
ConstantReport two_point_constant(const JordanCurve& curve, double scale_floor = 0.0, const SampleOptions& opt = {});
ConstantReport chord_arc_constant(const JordanCurve& curve, double scale_floor = 0.0, const SampleOptions& opt = {});

struct FlatnessEntry {
    double r = 0.0;
    double shell = 0.0;     // sup over pairs with chord in (next r, r]
    double envelope = 0.0;  // sup over pairs with chord <= r
    bool exceeds_diameter = false;
};

struct FlatnessProfile {
    std::vector<FlatnessEntry> entries;
    double estimate = 0.0;
    double estimate_scale = 0.0;
    bool estimate_trusted = false;
    size_t samples = 0;
};

FlatnessProfile flatness_profile(const JordanCurve& curve, const std::vector<double>& radii,
                                 const SampleOptions& opt = {});

// Sample set used by the sup estimators: arc-length coordinates and positions.
struct CurveSamples {
    std::vector<double> s;
    std::vector<Vec2> p;
};
CurveSamples curve_samples(const JordanCurve& curve, const SampleOptions& opt);

}  // namespace qsdome
