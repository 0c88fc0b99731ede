// Copyright 2026 The zonerec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "zonerec/raster.hpp"

namespace zonerec {

// A water-holding background cavity. `pixels` is the set of background
// pixels that cannot drain to the bottom edge (see bottom_reservoirs),
// grouped by 8-connectivity. `depth_points` are the floor minima.
struct Reservoir {
  std::vector<Coord> pixels;  // raster-scan order
  int height = 0;             // max row - min row + 1
  std::vector<Coord> depth_points;
};

struct FitLine {
  double slope = 0.0;      // rows per column
  double intercept = 0.0;  // row at column 0
};

// Water poured onto the image settles in background regions that cannot
// reach the bottom edge by any non-rising path (moves limited to down,
// left, right). Background pixels on the left/right image columns count as
// drained since water can spill around the component. Cavities are grouped
// 8-connected; depth points are filled in on each reservoir.
std::vector<Reservoir> bottom_reservoirs(const BinaryImage& bin);

// Keeps exactly the reservoirs with height >= 3 * stroke width.
std::vector<Reservoir> filter_reservoirs(const std::vector<Reservoir>& rs,
                                         StrokeWidth s_w);

// One point per deepest floor run: within each contiguous column interval of
// the reservoir, local maxima of the floor row; a plateau collapses to its
// midpoint column.
std::vector<Coord> depth_points(const Reservoir& r);

// Least-squares regression of row on column. Requires at least two points
// over at least two distinct columns; throws InputError otherwise.
FitLine fit_depth_line(const std::vector<Coord>& points);

}  // namespace zonerec
