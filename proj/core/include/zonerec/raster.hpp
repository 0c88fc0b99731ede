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

#include <cstdint>
#include <vector>

#include "zonerec/common.hpp"
#include "zonerec/rng.hpp"

namespace zonerec {

// 8-bit grayscale image, row-major.
struct RasterImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> samples;

  RasterImage() = default;
  RasterImage(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), samples(static_cast<size_t>(w) * h, fill) {}

  std::uint8_t at(int r, int c) const {
    return samples[static_cast<size_t>(r) * width + c];
  }
  std::uint8_t& at(int r, int c) {
    return samples[static_cast<size_t>(r) * width + c];
  }
  bool in_bounds(int r, int c) const {
    return r >= 0 && r < height && c >= 0 && c < width;
  }
  friend bool operator==(const RasterImage&, const RasterImage&) = default;
};

// Binary mask, true = ink foreground. Stored as uint8 to avoid the
// vector<bool> proxy.
struct BinaryImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> mask;

  BinaryImage() = default;
  BinaryImage(int w, int h, bool fill = false)
      : width(w), height(h), mask(static_cast<size_t>(w) * h, fill ? 1 : 0) {}

  bool get(int r, int c) const {
    return mask[static_cast<size_t>(r) * width + c] != 0;
  }
  void set(int r, int c, bool v) {
    mask[static_cast<size_t>(r) * width + c] = v ? 1 : 0;
  }
  bool in_bounds(int r, int c) const {
    return r >= 0 && r < height && c >= 0 && c < width;
  }
  int foreground_count() const;
  BBox foreground_bbox() const;
  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;
};

struct Component {
  int id = 0;
  std::vector<Coord> pixels;  // raster-scan order
  BBox bbox;
};

enum class KeypointKind { End, Junction, HighCurvature };

struct Keypoint {
  Coord pos;
  KeypointKind kind = KeypointKind::End;
};

struct Skeleton {
  BinaryImage mask;
  std::vector<Keypoint> keypoints;
};

struct StrokeWidth {
  int value = 1;
};

struct OtsuResult {
  BinaryImage image;
  int threshold = 0;   // foreground = sample strictly below this value
  bool degenerate = false;  // no threshold separates anything
};

enum class Interp { Nearest, Bilinear };

// ---- operations ----

// Global histogram threshold maximizing between-class variance; ink is dark,
// so foreground is everything strictly below the chosen threshold. A
// zero-variance image yields an empty foreground with `degenerate` set.
OtsuResult otsu_binarize(const RasterImage& img);

// Deterministic labeling in raster-scan order; connectivity 4 or 8.
std::vector<Component> connected_components(const BinaryImage& bin,
                                            int connectivity = 8);

// Horizontal run-length smoothing: background runs of length <= gap between
// two foreground pixels in the same row become foreground.
BinaryImage rlsa_horizontal(const BinaryImage& bin, int gap);

// Zhang-Suen thinning plus keypoint detection. End points have exactly one
// skeleton 8-neighbor, junctions at least three. High-curvature points are
// interior path pixels whose tangent turns by >= 45 degrees across a
// 5-pixel arc, non-maximum suppressed along each path.
Skeleton skeletonize(const BinaryImage& bin);

// Skeleton graph neighbors of p: 8-adjacency with staircase diagonals
// removed (a diagonal edge is dropped when one of its two orthogonal
// bridging pixels is itself skeleton ink). All skeleton tracing goes
// through this so degree analysis is stable at corners.
std::vector<Coord> skeleton_neighbors(const BinaryImage& mask, Coord p);

// Statistical mode of all horizontal and vertical foreground run lengths;
// ties break toward the smaller value. Throws InputError on empty input.
StrokeWidth stroke_width(const BinaryImage& bin);

// Mode over columns of (bottom-most - top-most foreground row + 1); empty
// columns are skipped and ties break toward the larger value. Throws
// InputError on empty input.
int word_height(const BinaryImage& bin);

// Rotation / shear with canvas expansion so no ink is clipped. Positive
// rotation tilts a horizontal line downward to the right; positive shear
// moves the top of a vertical bar to the right by height*tan(phi).
RasterImage rotate(const RasterImage& img, double theta_deg,
                   Interp interp = Interp::Bilinear, std::uint8_t fill = 0);
BinaryImage rotate(const BinaryImage& bin, double theta_deg);
RasterImage shear(const RasterImage& img, double phi_deg,
                  Interp interp = Interp::Bilinear, std::uint8_t fill = 0);
BinaryImage shear(const BinaryImage& bin, double phi_deg);

// 8-connected pixel path from p to q, inclusive of both ends.
std::vector<Coord> bresenham(Coord p, Coord q);

// Separable Gaussian, kernel radius ceil(3*sigma), clamp edge handling.
RasterImage gaussian_smooth(const RasterImage& img, double sigma);

// Additive zero-mean Gaussian noise with sigma = level * 255, clamped to
// [0,255]. level 0 returns the input untouched.
RasterImage add_noise(const RasterImage& img, double level,
                      std::uint64_t seed);

// Morphological closing (dilate then erode) with a disk of the given radius.
BinaryImage morph_close(const BinaryImage& bin, int radius);

// ---- small utilities shared across the pipeline ----

BinaryImage flip_vertical(const BinaryImage& bin);
BinaryImage crop(const BinaryImage& bin, const BBox& box);
// Nearest-neighbor resize of a binary mask to exactly (out_w x out_h).
BinaryImage resize_nearest(const BinaryImage& bin, int out_w, int out_h);
// Per-row / per-column foreground counts.
std::vector<int> horizontal_projection(const BinaryImage& bin);
std::vector<int> vertical_projection(const BinaryImage& bin);

}  // namespace zonerec
