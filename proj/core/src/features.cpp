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

#include "zonerec/features.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

namespace zonerec {

namespace {
constexpr double kPi = 3.14159265358979323846;

void gradient(const FloatImage& im, int r, int c, double& gx, double& gy) {
  auto px = [&](int rr, int cc) {
    rr = std::clamp(rr, 0, im.height - 1);
    cc = std::clamp(cc, 0, im.width - 1);
    return static_cast<double>(im.at(rr, cc));
  };
  gx = (px(r, c + 1) - px(r, c - 1)) * 0.5;
  gy = (px(r + 1, c) - px(r - 1, c)) * 0.5;
}

int orientation_bin(double gx, double gy) {
  double deg = std::atan2(gy, gx) * 180.0 / kPi;
  if (deg < 0.0) deg += 360.0;
  int bin = static_cast<int>(deg / 45.0);
  return bin >= 8 ? 7 : bin;
}

}  // namespace

int feature_dim(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::Phog: return 168;
    case FeatureKind::Lgh: return 128;
    case FeatureKind::Gabor: return 48;
    case FeatureKind::GPhog: return 216;
    case FeatureKind::MartiBunke: return 9;
  }
  return 0;
}

const char* feature_kind_name(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::Phog: return "phog";
    case FeatureKind::Lgh: return "lgh";
    case FeatureKind::Gabor: return "gabor";
    case FeatureKind::GPhog: return "gphog";
    case FeatureKind::MartiBunke: return "mb";
  }
  return "?";
}

FeatureKind feature_kind_from_name(const std::string& name) {
  if (name == "phog") return FeatureKind::Phog;
  if (name == "lgh") return FeatureKind::Lgh;
  if (name == "gabor") return FeatureKind::Gabor;
  if (name == "gphog") return FeatureKind::GPhog;
  if (name == "mb") return FeatureKind::MartiBunke;
  throw InputError("unknown feature kind: " + name);
}

BinaryImage normalize_height(const BinaryImage& bin, int norm_height) {
  if (bin.height == norm_height) return bin;
  const int out_w = std::max(
      1, static_cast<int>(std::lround(static_cast<double>(bin.width) *
                                      norm_height / bin.height)));
  return resize_nearest(bin, out_w, norm_height);
}

int frame_count(int norm_width, const FrameSpec& spec) {
  if (norm_width <= spec.win_width) return 1;
  return (norm_width - spec.win_width + spec.step - 1) / spec.step + 1;
}

std::vector<BinaryImage> normalize_and_frame(const BinaryImage& middle,
                                             const FrameSpec& spec) {
  if (middle.foreground_count() == 0)
    throw InputError("normalize_and_frame: empty middle zone");
  if (spec.step < 1 || spec.win_width < spec.step)
    throw InputError("normalize_and_frame: invalid frame spec");
  const BinaryImage norm = normalize_height(middle, spec.norm_height);
  const int n = frame_count(norm.width, spec);
  std::vector<BinaryImage> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    const int start = k * spec.step;
    BinaryImage win(spec.win_width, norm.height, false);
    for (int r = 0; r < norm.height; ++r)
      for (int c = 0; c < spec.win_width; ++c)
        if (start + c < norm.width) win.set(r, c, norm.get(r, start + c));
    out.push_back(std::move(win));
  }
  return out;
}

FloatImage to_float(const BinaryImage& bin) {
  FloatImage out(bin.width, bin.height, 0.f);
  for (size_t i = 0; i < bin.mask.size(); ++i)
    out.v[i] = bin.mask[i] ? 1.f : 0.f;
  return out;
}

FloatImage smooth(const FloatImage& img, double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    kernel[k + radius] = std::exp(-0.5 * k * k / (sigma * sigma));
    sum += kernel[k + radius];
  }
  for (double& v : kernel) v /= sum;

  FloatImage tmp(img.width, img.height, 0.f);
  for (int r = 0; r < img.height; ++r)
    for (int c = 0; c < img.width; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k)
        acc += kernel[k + radius] * img.at(r, std::clamp(c + k, 0, img.width - 1));
      tmp.at(r, c) = static_cast<float>(acc);
    }
  FloatImage out(img.width, img.height, 0.f);
  for (int r = 0; r < img.height; ++r)
    for (int c = 0; c < img.width; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k)
        acc += kernel[k + radius] * tmp.at(std::clamp(r + k, 0, img.height - 1), c);
      out.at(r, c) = static_cast<float>(acc);
    }
  return out;
}

std::vector<float> phog(const FloatImage& window) {
  std::array<std::vector<double>, 3> levels;
  for (int n = 0; n < 3; ++n)
    levels[n].assign(static_cast<size_t>(8) << (2 * n), 0.0);

  for (int r = 0; r < window.height; ++r) {
    for (int c = 0; c < window.width; ++c) {
      double gx, gy;
      gradient(window, r, c, gx, gy);
      const double mag = std::hypot(gx, gy);
      if (mag <= 0.0) continue;
      const int bin = orientation_bin(gx, gy);
      for (int n = 0; n < 3; ++n) {
        const int grid = 1 << n;
        const int cr = std::min(grid - 1, r * grid / window.height);
        const int cc = std::min(grid - 1, c * grid / window.width);
        levels[n][static_cast<size_t>(cr * grid + cc) * 8 + bin] += mag;
      }
    }
  }

  std::vector<float> out;
  out.reserve(168);
  for (int n = 0; n < 3; ++n) {
    double total = 0.0;
    for (double v : levels[n]) total += v;
    for (double v : levels[n])
      out.push_back(total > 0.0 ? static_cast<float>(v / total) : 0.f);
  }
  return out;
}

std::vector<float> lgh(const FloatImage& window) {
  std::vector<double> hist(128, 0.0);
  for (int r = 0; r < window.height; ++r) {
    for (int c = 0; c < window.width; ++c) {
      double gx, gy;
      gradient(window, r, c, gx, gy);
      const double mag = std::hypot(gx, gy);
      if (mag <= 0.0) continue;
      const int cr = std::min(3, r * 4 / window.height);
      const int cc = std::min(3, c * 4 / window.width);
      hist[static_cast<size_t>(cr * 4 + cc) * 8 + orientation_bin(gx, gy)] +=
          mag;
    }
  }
  return std::vector<float>(hist.begin(), hist.end());
}

namespace {

struct GaborBank {
  static constexpr int kRadius = 6;  // ceil(3 * sigma) with sigma = 2
  // kernels[orient][cos/sin][ (2R+1)^2 ]
  std::array<std::array<std::vector<double>, 2>, 4> kernels;

  GaborBank() {
    constexpr double lambda = 4.0, sigma = 2.0, gamma = 0.5;
    for (int o = 0; o < 4; ++o) {
      // Orientation labels the stroke direction; the carrier runs
      // perpendicular to it so label 0 responds to horizontal strokes.
      const double a = o * 45.0 * kPi / 180.0;
      const double cs = std::cos(a), sn = std::sin(a);
      auto& pair = kernels[o];
      pair[0].assign((2 * kRadius + 1) * (2 * kRadius + 1), 0.0);
      pair[1] = pair[0];
      double cos_sum = 0.0;
      int count = 0;
      for (int y = -kRadius; y <= kRadius; ++y) {
        for (int x = -kRadius; x <= kRadius; ++x) {
          const double u = -x * sn + y * cs;  // across the stroke
          const double w = x * cs + y * sn;   // along the stroke
          const double env =
              std::exp(-(u * u + gamma * gamma * w * w) / (2 * sigma * sigma));
          const double phase = 2.0 * kPi * u / lambda;
          const size_t idx =
              static_cast<size_t>(y + kRadius) * (2 * kRadius + 1) +
              (x + kRadius);
          pair[0][idx] = env * std::cos(phase);
          pair[1][idx] = env * std::sin(phase);
          cos_sum += pair[0][idx];
          ++count;
        }
      }
      // Remove the DC component so constant regions give zero response.
      const double mean = cos_sum / count;
      for (double& v : pair[0]) v -= mean;
    }
  }
};

const GaborBank& gabor_bank() {
  static const GaborBank bank;
  return bank;
}

}  // namespace

std::vector<float> gabor(const FloatImage& window) {
  const GaborBank& bank = gabor_bank();
  constexpr int R = GaborBank::kRadius;
  std::vector<float> out(48, 0.f);
  std::vector<double> mag(static_cast<size_t>(window.width) * window.height);

  for (int o = 0; o < 4; ++o) {
    for (int r = 0; r < window.height; ++r) {
      for (int c = 0; c < window.width; ++c) {
        double re = 0.0, im = 0.0;
        for (int dy = -R; dy <= R; ++dy) {
          const int rr = std::clamp(r + dy, 0, window.height - 1);
          for (int dx = -R; dx <= R; ++dx) {
            const int cc = std::clamp(c + dx, 0, window.width - 1);
            const size_t k =
                static_cast<size_t>(dy + R) * (2 * R + 1) + (dx + R);
            const double px = window.at(rr, cc);
            re += bank.kernels[o][0][k] * px;
            im += bank.kernels[o][1][k] * px;
          }
        }
        mag[static_cast<size_t>(r) * window.width + c] = std::hypot(re, im);
      }
    }
    for (int band = 0; band < 12; ++band) {
      const int r0 = band * window.height / 12;
      const int r1 = (band + 1) * window.height / 12;
      double acc = 0.0;
      int n = 0;
      for (int r = r0; r < r1; ++r)
        for (int c = 0; c < window.width; ++c) {
          acc += mag[static_cast<size_t>(r) * window.width + c];
          ++n;
        }
      out[static_cast<size_t>(o) * 12 + band] =
          n > 0 ? static_cast<float>(acc / n) : 0.f;
    }
  }
  return out;
}

std::vector<float> gphog(const FloatImage& window) {
  std::vector<float> out = gabor(window);
  const std::vector<float> p = phog(window);
  out.insert(out.end(), p.begin(), p.end());
  return out;
}

FrameSequence marti_bunke(const BinaryImage& normalized) {
  const int h = normalized.height, w = normalized.width;
  FrameSequence seq;
  seq.kind = FeatureKind::MartiBunke;
  seq.dim = 9;
  seq.spec = FrameSpec{h, 1, 1};
  seq.frames.reserve(w);

  double prev_upper = 0.5, prev_lower = 0.5;
  bool prev_empty = true;
  for (int c = 0; c < w; ++c) {
    int count = 0, top = -1, bottom = -1, transitions = 0;
    double sum_pos = 0.0, sum_pos2 = 0.0;
    bool prev_fg = false;
    for (int r = 0; r < h; ++r) {
      const bool fg = normalized.get(r, c);
      if (fg) {
        ++count;
        if (top < 0) top = r;
        bottom = r;
        const double pos = (r + 0.5) / h;
        sum_pos += pos;
        sum_pos2 += pos * pos;
        if (!prev_fg) ++transitions;
      }
      prev_fg = fg;
    }
    std::vector<float> f(9, 0.f);
    if (count == 0) {
      f = {0.f, 0.5f, 0.f, 0.5f, 0.5f, 0.f, 0.f, 0.f, 0.f};
      prev_upper = 0.5;
      prev_lower = 0.5;
      prev_empty = true;
    } else {
      const double upper = (top + 0.5) / h;
      const double lower = (bottom + 0.5) / h;
      f[0] = static_cast<float>(static_cast<double>(count) / h);
      f[1] = static_cast<float>(sum_pos / count);
      f[2] = static_cast<float>(sum_pos2 / count);
      f[3] = static_cast<float>(upper);
      f[4] = static_cast<float>(lower);
      f[5] = static_cast<float>(transitions);
      f[6] = static_cast<float>(static_cast<double>(count) /
                                (bottom - top + 1));
      f[7] = static_cast<float>(prev_empty ? 0.0 : upper - prev_upper);
      f[8] = static_cast<float>(prev_empty ? 0.0 : lower - prev_lower);
      prev_upper = upper;
      prev_lower = lower;
      prev_empty = false;
    }
    seq.frames.push_back(std::move(f));
  }
  return seq;
}

FrameSequence extract(const BinaryImage& middle, FeatureKind kind,
                      const FrameSpec& spec) {
  if (middle.foreground_count() == 0)
    throw InputError("extract: empty middle zone");
  const BinaryImage norm = normalize_height(middle, spec.norm_height);
  if (kind == FeatureKind::MartiBunke) {
    FrameSequence seq = marti_bunke(norm);
    return seq;
  }

  FloatImage img = to_float(norm);
  if (kind != FeatureKind::Gabor) img = smooth(img, 1.0);

  const int n = frame_count(norm.width, spec);
  FrameSequence seq;
  seq.kind = kind;
  seq.dim = feature_dim(kind);
  seq.spec = spec;
  seq.frames.reserve(n);
  for (int k = 0; k < n; ++k) {
    const int start = k * spec.step;
    FloatImage win(spec.win_width, img.height, 0.f);
    for (int r = 0; r < img.height; ++r)
      for (int c = 0; c < spec.win_width; ++c)
        if (start + c < img.width) win.at(r, c) = img.at(r, start + c);
    switch (kind) {
      case FeatureKind::Phog: seq.frames.push_back(phog(win)); break;
      case FeatureKind::Lgh: seq.frames.push_back(lgh(win)); break;
      case FeatureKind::Gabor: seq.frames.push_back(gabor(win)); break;
      case FeatureKind::GPhog: seq.frames.push_back(gphog(win)); break;
      case FeatureKind::MartiBunke: break;  // handled above
    }
  }
  return seq;
}

namespace {

constexpr char kFrameMagic[4] = {'Z', 'R', 'F', 'R'};
constexpr std::uint32_t kFrameVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<unsigned char, 4> b;
  for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xff;
  out.write(reinterpret_cast<const char*>(b.data()), 4);
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b;
  in.read(reinterpret_cast<char*>(b.data()), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

void put_f32(std::ostream& out, float f) {
  std::uint32_t v;
  std::memcpy(&v, &f, 4);
  put_u32(out, v);
}

float get_f32(std::istream& in) {
  const std::uint32_t v = get_u32(in);
  float f;
  std::memcpy(&f, &v, 4);
  return f;
}

}  // namespace

void write_frames(const std::string& path, const FrameSequence& seq) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out.write(kFrameMagic, 4);
  put_u32(out, kFrameVersion);
  put_u32(out, static_cast<std::uint32_t>(seq.kind));
  put_u32(out, static_cast<std::uint32_t>(seq.dim));
  put_u32(out, static_cast<std::uint32_t>(seq.frames.size()));
  put_u32(out, static_cast<std::uint32_t>(seq.spec.norm_height));
  put_u32(out, static_cast<std::uint32_t>(seq.spec.win_width));
  put_u32(out, static_cast<std::uint32_t>(seq.spec.step));
  for (const auto& frame : seq.frames)
    for (float f : frame) put_f32(out, f);
  if (!out) throw InputError("write failed: " + path);
}

FrameSequence read_frames(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kFrameMagic, 4) != 0)
    throw InputError(path + ": not a frame container");
  const std::uint32_t version = get_u32(in);
  if (version != kFrameVersion)
    throw InputError(path + ": unsupported container version");
  FrameSequence seq;
  seq.kind = static_cast<FeatureKind>(get_u32(in));
  seq.dim = static_cast<int>(get_u32(in));
  const std::uint32_t count = get_u32(in);
  seq.spec.norm_height = static_cast<int>(get_u32(in));
  seq.spec.win_width = static_cast<int>(get_u32(in));
  seq.spec.step = static_cast<int>(get_u32(in));
  seq.frames.assign(count, std::vector<float>(seq.dim, 0.f));
  for (auto& frame : seq.frames)
    for (float& f : frame) f = get_f32(in);
  if (!in) throw InputError(path + ": truncated frame container");
  return seq;
}

}  // namespace zonerec
