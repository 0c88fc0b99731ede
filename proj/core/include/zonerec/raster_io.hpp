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

// Grayscale image I/O. Format is picked from the file extension
// (.pgm -> binary P5, .png -> 8-bit gray PNG); reading sniffs the content.
RasterImage read_image(const std::string& path);
void write_image(const std::string& path, const RasterImage& img);

RasterImage read_pgm(const std::string& path);
void write_pgm(const std::string& path, const RasterImage& img);
RasterImage read_png_gray(const std::string& path);
void write_png_gray(const std::string& path, const RasterImage& img);

// Debug overlays are RGB PNGs drawn over the binarized word.
struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
};

struct OverlayImage {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;

  OverlayImage() = default;
  OverlayImage(int w, int h, Rgb fill)
      : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {}
  void set(int r, int c, Rgb v) {
    if (r >= 0 && r < height && c >= 0 && c < width)
      pixels[static_cast<size_t>(r) * width + c] = v;
  }
};

// Overlay color coding used by every debug export:
//   ink black, reservoirs gray, depth points green, matra path blue,
//   character boundaries red, zone split rows yellow.
namespace overlay_colors {
inline constexpr Rgb kInk{0, 0, 0};
inline constexpr Rgb kBackground{255, 255, 255};
inline constexpr Rgb kReservoir{160, 160, 160};
inline constexpr Rgb kDepthPoint{0, 176, 0};
inline constexpr Rgb kMatra{0, 64, 255};
inline constexpr Rgb kBoundary{230, 0, 0};
inline constexpr Rgb kBand{240, 200, 40};
}  // namespace overlay_colors

OverlayImage overlay_from_binary(const BinaryImage& bin);
void write_png_rgb(const std::string& path, const OverlayImage& img);

}  // namespace zonerec
