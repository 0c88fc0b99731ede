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

#include "zonerec/synth.hpp"

#include <algorithm>
#include <cmath>

namespace zonerec {

namespace {

// Stamps a disk of the given stroke thickness at every path pixel.
void stamp(BinaryImage& im, Coord p, int stroke) {
  const int radius = stroke / 2;
  for (int dr = -radius; dr <= radius; ++dr)
    for (int dc = -radius; dc <= radius; ++dc)
      if (dr * dr + dc * dc <= radius * radius &&
          im.in_bounds(p.row + dr, p.col + dc))
        im.set(p.row + dr, p.col + dc, true);
}

void thick_line(BinaryImage& im, Coord a, Coord b, int stroke) {
  for (Coord p : bresenham(a, b)) stamp(im, p, stroke);
}

// Draws a glyph stencil into `im` with cell origin (row0, col0), cell width
// w and the reference 30-row height. Every stencil keeps its main cavity
// floor at cell row ~21 so reservoir depth points line up across a word.
void draw_stencil(BinaryImage& im, int index, int row0, int col0, int w,
                  int stroke, Rng& rng, bool jitter) {
  auto X = [&](double frac24) {
    return col0 + static_cast<int>(std::lround(frac24 * (w - 1) / 23.0));
  };
  auto j1 = [&]() { return jitter ? rng.uniform_int(-1, 1) : 0; };
  auto v = [&](int x, int y0, int y1) {
    thick_line(im, {row0 + y0, x}, {row0 + y1, x}, stroke);
  };
  auto h = [&](int y, int x0, int x1) {
    thick_line(im, {row0 + y, x0}, {row0 + y, x1}, stroke);
  };
  auto d = [&](int x0, int y0, int x1, int y1) {
    thick_line(im, {row0 + y0, x0}, {row0 + y1, x1}, stroke);
  };

  switch (index) {
    case 0:  // wide cup
      v(X(4) + j1(), 0, 23);
      v(X(19) + j1(), 0, 23);
      h(23, X(4), X(19));
      break;
    case 1:  // left stem, foot, low right wall
      v(X(4) + j1(), 0, 23);
      h(23, X(4), X(19));
      v(X(18) + j1(), 10, 23);
      break;
    case 2:  // trapezoid cup (V with a short floor)
      d(X(4) + j1(), 0, X(9), 21);
      d(X(19) + j1(), 0, X(15), 21);
      h(23, X(9), X(15));
      break;
    case 3:  // three-wall trough
      v(X(4) + j1(), 0, 23);
      v(X(12) + j1(), 0, 23);
      v(X(19) + j1(), 0, 23);
      h(23, X(4), X(19));
      break;
    case 4:  // closed box with stems (carries a loop)
      v(X(7), 6, 23);
      v(X(17), 6, 23);
      h(7, X(7), X(17));
      h(23, X(7), X(17));
      v(X(12) + j1(), 0, 7);
      v(X(12) + j1(), 23, 29);
      break;
    case 5:  // stem, foot, low wall, mid flag
      v(X(5) + j1(), 0, 23);
      h(23, X(5), X(17));
      v(X(16) + j1(), 12, 23);
      h(9, X(5), X(12));
      break;
    case 6:  // cup with a free-ended diagonal strut
      v(X(4) + j1(), 0, 23);
      v(X(19) + j1(), 0, 23);
      h(23, X(4), X(19));
      d(X(4), 2, X(13), 14);
      break;
    case 7:  // cup with a short center wall
      v(X(4) + j1(), 0, 23);
      v(X(19) + j1(), 0, 23);
      h(23, X(4), X(19));
      v(X(12) + j1(), 12, 23);
      break;
    case 8:  // fork with tail
      d(X(7) + j1(), 0, X(10), 21);
      d(X(17) + j1(), 0, X(14), 21);
      h(23, X(10), X(14));
      v(X(12), 23, 29);
      break;
    default:  // narrow cup with top wings
      v(X(8) + j1(), 0, 23);
      v(X(16) + j1(), 0, 23);
      h(23, X(8), X(16));
      h(2, X(2), X(8));
      h(2, X(16), X(22));
      break;
  }
}

// Upper modifiers are small marks drawn above the headline; (row1, colc) is
// the bottom center of the mark's box.
void draw_upper_mod(BinaryImage& im, int index, int row1, int colc,
                    int stroke) {
  switch (index) {
    case 0:  // dot
      for (int dr = -2; dr <= 2; ++dr)
        for (int dc = -2; dc <= 2; ++dc)
          if (dr * dr + dc * dc <= 5 && im.in_bounds(row1 - 3 + dr, colc + dc))
            im.set(row1 - 3 + dr, colc + dc, true);
      break;
    case 1:  // caret
      thick_line(im, {row1, colc - 4}, {row1 - 6, colc}, stroke - 1);
      thick_line(im, {row1 - 6, colc}, {row1, colc + 4}, stroke - 1);
      break;
    default:  // bar
      thick_line(im, {row1 - 3, colc - 4}, {row1 - 3, colc + 4}, stroke);
      break;
  }
}

// Lower modifiers; (row0, colc) is the top center of the mark's box.
void draw_lower_mod(BinaryImage& im, int index, int row0, int colc,
                    int stroke) {
  if (index == 0) {  // hook: down then left, endpoint at the tip
    thick_line(im, {row0, colc}, {row0 + 6, colc}, stroke - 1);
    thick_line(im, {row0 + 6, colc}, {row0 + 6, colc - 5}, stroke - 1);
  } else {  // loop with a short tail below
    const int cy = row0 + 4;
    for (int a = 0; a < 64; ++a) {
      const double ang = a * 2.0 * 3.14159265358979 / 64.0;
      const int r = cy + static_cast<int>(std::lround(3.5 * std::sin(ang)));
      const int c = colc + static_cast<int>(std::lround(3.5 * std::cos(ang)));
      if (im.in_bounds(r, c)) im.set(r, c, true);
      if (im.in_bounds(r, c + 1)) im.set(r, c + 1, true);
    }
    thick_line(im, {cy + 3, colc}, {cy + 7, colc}, stroke - 1);
  }
}

RasterImage labels_from_masks(const BinaryImage& up, const BinaryImage& mid,
                              const BinaryImage& low) {
  RasterImage labels(mid.width, mid.height, kZoneBackground);
  for (int r = 0; r < mid.height; ++r)
    for (int c = 0; c < mid.width; ++c) {
      if (up.get(r, c)) labels.at(r, c) = kZoneUpper;
      else if (mid.get(r, c)) labels.at(r, c) = kZoneMiddle;
      else if (low.get(r, c)) labels.at(r, c) = kZoneLower;
    }
  return labels;
}

}  // namespace

int AlphabetSpec::middle_index(const std::string& sym) const {
  for (size_t i = 0; i < middle.size(); ++i)
    if (middle[i] == sym) return static_cast<int>(i);
  return -1;
}
int AlphabetSpec::upper_index(const std::string& sym) const {
  for (size_t i = 0; i < upper.size(); ++i)
    if (upper[i] == sym) return static_cast<int>(i);
  return -1;
}
int AlphabetSpec::lower_index(const std::string& sym) const {
  for (size_t i = 0; i < lower.size(); ++i)
    if (lower[i] == sym) return static_cast<int>(i);
  return -1;
}

AlphabetSpec toy_alphabet() {
  AlphabetSpec spec;
  for (char c = 'a'; c <= 'j'; ++c) spec.middle.push_back(std::string(1, c));
  spec.upper = {"A", "B", "C"};
  spec.lower = {"x", "y"};
  return spec;
}

std::string WordSpec::middle_string() const {
  std::string out;
  for (const auto& s : middle) out += s;
  return out;
}

std::vector<std::string> WordSpec::cluster_tokens() const {
  std::vector<std::string> tokens(middle.begin(), middle.end());
  for (const auto& [sym, idx] : upper)
    if (idx >= 0 && idx < static_cast<int>(tokens.size())) tokens[idx] += sym;
  for (const auto& [sym, idx] : lower)
    if (idx >= 0 && idx < static_cast<int>(tokens.size())) tokens[idx] += sym;
  return tokens;
}

std::string WordSpec::full_string() const {
  std::string out;
  for (const auto& t : cluster_tokens()) out += t;
  return out;
}

WordSpec random_word(const AlphabetSpec& alphabet, Rng& rng, int min_len,
                     int max_len, double upper_prob, double lower_prob) {
  WordSpec word;
  // Length distribution peaking near the middle, like word-length
  // histograms of handwritten corpora.
  const int span = max_len - min_len;
  int len = min_len;
  if (span > 0) {
    const int a = rng.uniform_int(0, span);
    const int b = rng.uniform_int(0, span);
    len = min_len + (a + b + 1) / 2;
  }
  for (int i = 0; i < len; ++i) {
    word.middle.push_back(alphabet.middle[rng.uniform_int(
        0, static_cast<int>(alphabet.middle.size()) - 1)]);
    if (rng.bernoulli(upper_prob))
      word.upper.emplace_back(
          alphabet.upper[rng.uniform_int(
              0, static_cast<int>(alphabet.upper.size()) - 1)],
          i);
    if (rng.bernoulli(lower_prob))
      word.lower.emplace_back(
          alphabet.lower[rng.uniform_int(
              0, static_cast<int>(alphabet.lower.size()) - 1)],
          i);
  }
  return word;
}

RenderedWord render_word(const AlphabetSpec& alphabet, const WordSpec& word,
                         Rng& rng, const DistortOptions& distort) {
  const int n = static_cast<int>(word.middle.size());
  const int stroke = alphabet.stroke;

  std::vector<int> cell_w(n), gap(n);
  int total = 0;
  for (int i = 0; i < n; ++i) {
    cell_w[i] =
        alphabet.cell_width + (distort.jitter ? rng.uniform_int(-2, 2) : 0);
    gap[i] = i == 0 ? 0
                    : alphabet.glyph_gap +
                          (distort.jitter ? rng.uniform_int(0, 2) : 0);
    total += cell_w[i] + gap[i];
  }

  const int width = total + 2 * alphabet.margin;
  const int matra_r0 = alphabet.margin + alphabet.upper_height;
  const int middle_r0 = matra_r0 + stroke;
  const int baseline = middle_r0 + alphabet.middle_height - 1;
  const int height = baseline + 1 + alphabet.lower_height + alphabet.margin;

  BinaryImage up_mask(width, height, false);
  BinaryImage mid_mask(width, height, false);
  BinaryImage low_mask(width, height, false);

  RenderedWord out;
  out.word = word;
  out.matra_row = matra_r0 + stroke / 2;
  out.baseline_row = baseline;

  int x = alphabet.margin;
  std::vector<int> centers(n);
  for (int i = 0; i < n; ++i) {
    x += gap[i];
    const int idx = alphabet.middle_index(word.middle[i]);
    draw_stencil(mid_mask, idx < 0 ? 0 : idx, middle_r0, x, cell_w[i], stroke,
                 rng, distort.jitter);
    out.char_spans.emplace_back(x, x + cell_w[i] - 1);
    centers[i] = x + cell_w[i] / 2;
    x += cell_w[i];
  }

  // headline across the word
  thick_line(mid_mask, {out.matra_row, alphabet.margin},
             {out.matra_row, width - 1 - alphabet.margin}, stroke);

  // upper modifiers: kept clear of the headline band (2*S_w above the
  // headline top) so headline extraction cannot absorb them
  for (const auto& [sym, idx] : word.upper) {
    const int colc =
        centers[idx] + (distort.jitter ? rng.uniform_int(-2, 2) : 0);
    const int gap_px = 4 + (distort.jitter ? rng.uniform_int(0, 2) : 0);
    draw_upper_mod(up_mask, std::max(0, alphabet.upper_index(sym)),
                   matra_r0 - gap_px, colc, stroke);
  }

  // lower modifiers: below the baseline, detached or touching via a stem
  for (const auto& [sym, idx] : word.lower) {
    const int colc =
        centers[idx] + (distort.jitter ? rng.uniform_int(-2, 2) : 0);
    const int top = baseline + 3;
    draw_lower_mod(low_mask, std::max(0, alphabet.lower_index(sym)), top,
                   colc, stroke);
    if (rng.uniform() < distort.touching_lower_prob) {
      int attach = -1;
      for (int r = baseline; r >= middle_r0 && attach < 0; --r)
        if (mid_mask.get(r, colc)) attach = r;
      if (attach >= 0)
        thick_line(low_mask, {attach + 1, colc}, {top + 1, colc}, stroke - 1);
    }
  }

  RasterImage labels = labels_from_masks(up_mask, mid_mask, low_mask);
  RasterImage gray(width, height, 0);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) {
      const bool ink =
          up_mask.get(r, c) || mid_mask.get(r, c) || low_mask.get(r, c);
      int value = ink ? 25 : 235;
      if (distort.jitter) value += rng.uniform_int(-10, 10);
      gray.at(r, c) = static_cast<std::uint8_t>(std::clamp(value, 0, 255));
    }

  if (distort.slant_deg != 0.0) {
    gray = shear(gray, distort.slant_deg, Interp::Bilinear, 235);
    labels = shear(labels, distort.slant_deg, Interp::Nearest, 0);
    out.applied_slant = distort.slant_deg;
  }
  if (distort.skew_deg != 0.0) {
    gray = rotate(gray, distort.skew_deg, Interp::Bilinear, 235);
    labels = rotate(labels, distort.skew_deg, Interp::Nearest, 0);
    out.applied_skew = distort.skew_deg;
  }
  if (distort.noise_level > 0.0)
    gray = add_noise(gray, distort.noise_level, distort.noise_seed);

  out.gray = std::move(gray);
  out.zone_labels = std::move(labels);
  return out;
}

BinaryImage render_modifier(const AlphabetSpec& alphabet,
                            const std::string& symbol, bool upper_zone,
                            Rng& rng, bool with_stem) {
  BinaryImage im(24, with_stem ? 22 : 16, false);
  const int colc = 12 + rng.uniform_int(-1, 1);
  if (upper_zone) {
    draw_upper_mod(im, std::max(0, alphabet.upper_index(symbol)),
                   13 + rng.uniform_int(-1, 0), colc, alphabet.stroke);
  } else {
    const int top = (with_stem ? 6 : 2) + rng.uniform_int(0, 1);
    draw_lower_mod(im, std::max(0, alphabet.lower_index(symbol)), top, colc,
                   alphabet.stroke);
    if (with_stem)
      thick_line(im, {0, colc}, {top + 1, colc}, alphabet.stroke - 1);
  }
  return im;
}

BinaryImage render_fragment(const AlphabetSpec& alphabet, Rng& rng) {
  BinaryImage im(24, 16, false);
  const int kind = rng.uniform_int(0, 2);
  const int x = 12 + rng.uniform_int(-3, 3);
  if (kind == 0) {  // vertical stub (cut stroke end)
    thick_line(im, {0, x}, {10 + rng.uniform_int(0, 4), x}, alphabet.stroke);
  } else if (kind == 1) {  // corner piece
    thick_line(im, {0, x}, {9, x}, alphabet.stroke);
    thick_line(im, {9, x}, {9, x + rng.uniform_int(3, 7)}, alphabet.stroke);
  } else {  // diagonal stub
    thick_line(im, {0, x}, {11, x + rng.uniform_int(-6, 6)}, alphabet.stroke);
  }
  return im;
}

}  // namespace zonerec
