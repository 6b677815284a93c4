#pragma once

#include "equalize.hpp"
#include "flatten.hpp"

namespace seamless {

// Splits every edge that connects a cone to a vertex lying on a boundary
// segment, so no cone fan is touched (refined or moved) by the padding
// passes and realized cone angles stay bitwise identical.
void isolate_cones(Flattening& fl);

// Applies discrete map padding to the laid-out charts in two passes:
//   1. stretch: per segment with positive width, insert a strip line at
//      offset tau inside the chart (splitting crossed edges) and move the
//      segment vertices outward by the width;
//   2. shift: per segment, insert a fresh strip and move the segment
//      vertices laterally so the boundary runs at constant speed in original
//      3d arc length (piecewise per chart, one speed per segment).
// `w` is indexed by the segment ids of boundary_map(fl.mc, ...) with uv
// lengths at call time. Mutates fl in place (refinement included) and
// returns the boundary map of the padded layout.
BoundaryMap pad_charts(Flattening& fl, const Eigen::VectorXd& w);

}  // namespace seamless
