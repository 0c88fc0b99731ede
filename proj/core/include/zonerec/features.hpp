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

#include <string>
#include <vector>

#include "zonerec/raster.hpp"

namespace zonerec {

enum class FeatureKind { Phog, Lgh, Gabor, GPhog, MartiBunke };

int feature_dim(FeatureKind kind);  // 168 / 128 / 48 / 216 / 9
const char* feature_kind_name(FeatureKind kind);
FeatureKind feature_kind_from_name(const std::string& name);

struct FrameSpec {
  int norm_height = 40;
  int win_width = 6;
  int step = 3;
};

struct FrameSequence {
  std::vector<std::vector<float>> frames;
  int dim = 0;
  FrameSpec spec;
  FeatureKind kind = FeatureKind::Phog;
};

struct FloatImage {
  int width = 0;
  int height = 0;
  std::vector<float> v;

  FloatImage() = default;
  FloatImage(int w, int h, float fill = 0.f)
      : width(w), height(h), v(static_cast<size_t>(w) * h, fill) {}
  float at(int r, int c) const {
    return v[static_cast<size_t>(r) * width + c];
  }
  float& at(int r, int c) { return v[static_cast<size_t>(r) * width + c]; }
};

// Nearest-neighbor rescale to the given height, preserving aspect ratio.
BinaryImage normalize_height(const BinaryImage& bin, int norm_height);

// Overlapping sliding windows over the height-normalized middle zone,
// left to right; the final partial window is zero-padded to win_width.
// Window starts are 0, step, ..., ceil((W'-win)/step)*step.
std::vector<BinaryImage> normalize_and_frame(const BinaryImage& middle,
                                             const FrameSpec& spec);
int frame_count(int norm_width, const FrameSpec& spec);

FloatImage to_float(const BinaryImage& bin);
FloatImage smooth(const FloatImage& img, double sigma);

// Pyramid histogram of oriented gradients: levels 0..2 with 4^N cells, 8
// orientation bins over 360 degrees, magnitude-weighted hard assignment,
// every level block L1-normalized (all-zero blocks stay zero). 168 values.
std::vector<float> phog(const FloatImage& window);

// 4x4 cell grid of 8-bin gradient histograms, row-major. 128 values.
std::vector<float> lgh(const FloatImage& window);

// Gabor magnitude responses at stroke orientations 0/45/90/135 degrees
// (lambda 4, sigma 2, gamma 0.5, zero-mean carrier), each split into 12
// horizontal bands averaged per band. 48 values.
std::vector<float> gabor(const FloatImage& window);

// gabor followed by phog on the same window. 216 values.
std::vector<float> gphog(const FloatImage& window);

// Nine per-column profile features over a height-normalized binary image:
// ink fraction, center of gravity, second moment, upper/lower profile,
// transitions, ink fraction between profiles, and both profile gradients.
// Empty columns yield (0, 0.5, 0, 0.5, 0.5, 0, 0, 0, 0).
FrameSequence marti_bunke(const BinaryImage& normalized);

// Dispatch: normalizes height, smooths where the feature expects it, slices
// windows and extracts. Throws InputError on an empty middle zone.
FrameSequence extract(const BinaryImage& middle, FeatureKind kind,
                      const FrameSpec& spec);

// Versioned binary container (magic "ZRFR", little-endian header and f32
// payload). Round-trips bit-exactly.
void write_frames(const std::string& path, const FrameSequence& seq);
FrameSequence read_frames(const std::string& path);

}  // namespace zonerec
