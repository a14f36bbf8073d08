#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qsdome/geometry.hpp"

namespace qsdome::svg {

struct Path {
    std::vector<Vec2> points;
    bool closed = true;
    std::string stroke = "#000";
    double width = 1.0;  // in output pixels
};

// Stroke-only drawing, fitted to a square canvas with y pointing up.
void write_paths(std::ostream& os, const std::vector<Path>& paths, double canvas = 512.0);

struct Series {
    std::vector<Vec2> points;  // (x, y) data, positive for log axes
    std::string stroke = "#000";
};

// Log-log scatter of each series as small stroked crosses, with a frame and decade ticks.
void write_loglog(std::ostream& os, const std::vector<Series>& series, const std::string& xlabel,
                  const std::string& ylabel, double canvas = 512.0);

}  // namespace qsdome::svg
