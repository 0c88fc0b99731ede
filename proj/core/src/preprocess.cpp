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

#include "zonerec/preprocess.hpp"

#include <algorithm>
#include <vector>
#include <cmath>
#include <set>

namespace zonerec {

namespace {
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

double clamp_angle(double deg) { return std::clamp(deg, -45.0, 45.0); }
}  // namespace

SkewEstimate estimate_skew(const BinaryImage& bin) {
  SkewEstimate est;
  std::vector<Coord> points;
  StrokeWidth sw{1};
  if (bin.foreground_count() > 0) sw = stroke_width(bin);
  for (const Reservoir& r : filter_reservoirs(bottom_reservoirs(bin), sw))
    points.insert(points.end(), r.depth_points.begin(), r.depth_points.end());
  est.depth_point_count = static_cast<int>(points.size());

  auto distinct_cols = [](const std::vector<Coord>& pts) {
    std::set<int> cols;
    for (Coord p : pts) cols.insert(p.col);
    return cols.size();
  };
  if (points.size() < 2 || distinct_cols(points) < 2) {
    est.fallback = true;
    return est;
  }
  FitLine line = fit_depth_line(points);

  // One trimmed refit: a single spurious cavity (wedges that barely pass
  // the height filter) can dominate the least-squares slope, so points far
  // off the first fit are dropped before the final estimate.
  std::vector<double> res;
  res.reserve(points.size());
  for (Coord p : points)
    res.push_back(std::abs(p.row - (line.slope * p.col + line.intercept)));
  std::vector<double> sorted = res;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2,
                   sorted.end());
  const double thr = std::max(2.5, 2.0 * sorted[sorted.size() / 2]);
  std::vector<Coord> kept;
  for (size_t i = 0; i < points.size(); ++i)
    if (res[i] <= thr) kept.push_back(points[i]);
  if (kept.size() >= 2 && kept.size() < points.size() &&
      distinct_cols(kept) >= 2)
    line = fit_depth_line(kept);

  est.theta_deg = clamp_angle(std::atan(line.slope) / kDegToRad);
  return est;
}

RasterImage correct_skew(const RasterImage& img, double theta_deg,
                         Interp interp, std::uint8_t fill) {
  return rotate(img, -clamp_angle(theta_deg), interp, fill);
}

BinaryImage correct_skew(const BinaryImage& bin, double theta_deg) {
  return rotate(bin, -clamp_angle(theta_deg));
}

double slant_peakiness(const BinaryImage& bin, double phi_deg) {
  // Histogram of sheared column indices; equivalent to shearing by -phi and
  // taking the vertical projection, without building the intermediate image.
  const double t = std::tan(phi_deg * kDegToRad);
  const int h = bin.height;
  if (h == 0 || bin.width == 0) return 0.0;
  // Sheared column range: c - (h-1-r)*t over all pixels.
  const int slack = static_cast<int>(std::ceil(std::abs((h - 1) * t))) + 1;
  std::vector<std::int64_t> hist(static_cast<size_t>(bin.width) + 2 * slack, 0);
  for (int r = 0; r < h; ++r) {
    const double off = (h - 1 - r) * t;
    for (int c = 0; c < bin.width; ++c) {
      if (!bin.get(r, c)) continue;
      const int cc = static_cast<int>(std::lround(c - off)) + slack;
      ++hist[cc];
    }
  }
  double score = 0.0;
  for (std::int64_t v : hist) score += static_cast<double>(v) * v;
  return score;
}

SlantEstimate estimate_slant(const BinaryImage& bin) {
  SlantEstimate est;
  if (bin.foreground_count() == 0) {
    est.blank = true;
    return est;
  }
  double best_score = -1.0;
  double best_phi = 0.0;
  for (int phi = -45; phi <= 45; ++phi) {
    const double score = slant_peakiness(bin, phi);
    const bool better =
        score > best_score ||
        (score == best_score &&
         (std::abs(phi) < std::abs(best_phi) ||
          (std::abs(phi) == std::abs(best_phi) && phi < best_phi)));
    if (better) {
      best_score = score;
      best_phi = phi;
    }
  }
  est.phi_deg = best_phi;
  return est;
}

RasterImage correct_slant(const RasterImage& img, double phi_deg,
                          Interp interp, std::uint8_t fill) {
  return shear(img, -clamp_angle(phi_deg), interp, fill);
}

BinaryImage correct_slant(const BinaryImage& bin, double phi_deg) {
  return shear(bin, -clamp_angle(phi_deg));
}

}  // namespace zonerec
