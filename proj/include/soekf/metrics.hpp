#pragma once

#include "soekf/core.hpp"

#include <array>

namespace soekf {

// Intersections of the two symmetry axes with the shape boundary, ordered
// [+e1, -e1, +e2, -e2]. Edge midpoints of a rectangle coincide with these,
// so the same four points evaluate both shapes.
struct ShapePoints {
  std::array<Vec2, 4> points;
};

ShapePoints axis_endpoints(const EllipseParams& p);

// 4-point Wasserstein/OSPA miss-distance [m^2]: min over the 24 assignments
// of the mean squared point distance. Absorbs the alpha + pi and axis-swap
// shape symmetries.
double ospa4(const EllipseParams& a, const EllipseParams& b);

}  // namespace soekf
