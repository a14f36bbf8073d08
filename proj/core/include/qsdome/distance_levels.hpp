#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsdome/curve.hpp"

namespace qsdome {

// Regular node lattice covering the curve's bounding box with a margin of outside nodes.
struct Grid {
    Vec2 origin;
    double h = 0.0;
    size_t nx = 0;
    size_t ny = 0;

    Vec2 node(size_t i, size_t j) const {
        return {origin.x + static_cast<double>(i) * h, origin.y + static_cast<double>(j) * h};
    }
    size_t id(size_t i, size_t j) const { return j * nx + i; }
};

// Spacing is max(bbox extent)/resolution; the origin is nudged so no curve vertex sits on a grid line.
Grid make_grid(const JordanCurve& curve, size_t resolution);

class DistanceField {
public:
    DistanceField(const JordanCurve& curve, size_t resolution);

    const Grid& grid() const { return grid_; }
    const JordanCurve& curve() const { return curve_; }
    size_t resolution() const { return resolution_; }
    // Signed: positive inside.
    double value(size_t i, size_t j) const { return value_[grid_.id(i, j)]; }
    const std::vector<double>& values() const { return value_; }
    double exact(Vec2 p) const;
    double cell_diagonal() const { return grid_.h * std::sqrt(2.0); }

private:
    JordanCurve curve_;
    size_t resolution_;
    Grid grid_;
    std::vector<double> value_;
};

double distance_to_boundary(const JordanCurve& curve, Vec2 p);

enum class LevelClass { empty, jordan, multi_component, self_touching };
std::string to_string(LevelClass c);

struct LevelSet {
    double epsilon = 0.0;
    std::vector<std::vector<Vec2>> components;
    LevelClass classification = LevelClass::empty;
    double cell_diagonal = 0.0;
};

LevelSet extract_level_set(const DistanceField& field, double eps);
LevelSet extract_level_set(const JordanCurve& curve, double eps, size_t resolution);

struct DeltaRegion {
    double epsilon = 0.0;
    std::vector<std::vector<Vec2>> boundaries;
    std::vector<double> areas;
    size_t count() const { return areas.size(); }
};

DeltaRegion delta_components(const DistanceField& field, double eps);
DeltaRegion delta_components(const JordanCurve& curve, double eps, size_t resolution);

struct Inradius {
    Vec2 center;
    double radius = 0.0;
};
Inradius inradius(const DistanceField& field);

struct Proximity {
    double M = 1.0;
    double min_ratio = 1.0;
    Vec2 witness;
    size_t samples = 0;
};
Proximity proximity_constant(const JordanCurve& curve, const LevelSet& level, size_t min_samples = 2048);
Proximity proximity_constant(const JordanCurve& curve, double eps, size_t resolution = 512);

struct LevelScanEntry {
    double epsilon = 0.0;
    LevelClass classification = LevelClass::empty;
    size_t components = 0;
    std::optional<double> two_point;
    std::optional<double> chord_arc;
    std::optional<double> proximity;
};

struct LevelScanReport {
    std::vector<LevelScanEntry> entries;
    double K_max = 100.0;
    double c_max = 100.0;
    size_t resolution = 0;
    double inradius = 0.0;
    std::optional<double> ljc_eps0;
    std::optional<double> lqc_eps0;
    std::optional<double> lca_eps0;
    bool ljc() const { return ljc_eps0.has_value(); }
    bool lqc() const { return lqc_eps0.has_value(); }
    bool lca() const { return lca_eps0.has_value(); }
};

std::vector<double> geometric_ladder(double inradius, int levels = 12);

// Empty ladder means geometric_ladder(inradius).
LevelScanReport level_scan(const JordanCurve& curve, std::vector<double> ladder, double K_max = 100.0,
                           double c_max = 100.0, size_t resolution = 512);

}  // namespace qsdome
