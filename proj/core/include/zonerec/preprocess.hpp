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

#include "zonerec/raster.hpp"
#include "zonerec/reservoir.hpp"

namespace zonerec {

struct SkewEstimate {
  double theta_deg = 0.0;
  bool fallback = false;  // fewer than 2 usable depth points
  int depth_point_count = 0;
};

struct SlantEstimate {
  double phi_deg = 0.0;
  bool blank = false;  // no foreground to score
};

// Skew from the regression line over depth points of height-filtered bottom
// reservoirs; falls back to 0 when the word offers fewer than two usable
// points. The angle is clamped to [-45, 45].
SkewEstimate estimate_skew(const BinaryImage& bin);

// Rotates by -theta. Angles beyond +-45 degrees are clamped (the caller is
// told via the report produced by the CLI stage, not here).
RasterImage correct_skew(const RasterImage& img, double theta_deg,
                         Interp interp = Interp::Bilinear,
                         std::uint8_t fill = 0);
BinaryImage correct_skew(const BinaryImage& bin, double theta_deg);

// Slant search over -45..45 degrees in 1-degree steps: shear by -phi,
// score the vertical projection by sum of squared column counts, return the
// argmax (ties prefer the smaller |phi|, then the smaller phi).
SlantEstimate estimate_slant(const BinaryImage& bin);

RasterImage correct_slant(const RasterImage& img, double phi_deg,
                          Interp interp = Interp::Bilinear,
                          std::uint8_t fill = 0);
BinaryImage correct_slant(const BinaryImage& bin, double phi_deg);

// Peakiness score used by the slant search, exposed for testing: projects
// every foreground pixel along the -phi shear direction and returns the sum
// of squared column counts.
double slant_peakiness(const BinaryImage& bin, double phi_deg);

}  // namespace zonerec
