#pragma once

#include <map>
#include <string>

#include "qsdome/curve.hpp"

namespace qsdome::fixtures {

JordanCurve circle(double r = 1.0, size_t n = 2048);
JordanCurve ellipse(double a = 1.0, double b = 0.5, size_t n = 2048);
// [0,s]^2 with each side split into per_side edges.
JordanCurve square(double s = 1.0, size_t per_side = 1);
JordanCurve regular_polygon(size_t k = 6, double r = 1.0, size_t per_side = 1);
// Two disks of the given radius, centers `separation` apart on the x-axis, joined by a strip of half-width `neck`.
JordanCurve dumbbell(double radius = 1.0, double separation = 3.0, double neck = 0.1, size_t n = 2048);
// |t| = s^2 for 0 <= s <= 1 closed by the segment x = 1; n vertices per parabolic branch.
JordanCurve cusp(size_t n = 1024);
// Unit disk with a V-notch: mouth width w on the circle at angle 0, tip at (1 - depth, 0).
JordanCurve spike(double depth = 0.5, double width = 0.1, size_t n = 2048);

// "name" or "name:key=value,key=value".
JordanCurve from_spec(const std::string& spec);

}  // namespace qsdome::fixtures
