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
#include <string>
#include <vector>

#include "zonerec/raster.hpp"
#include "zonerec/rng.hpp"

namespace zonerec {

// Synthetic word-image generator. Words are rendered as glyph stencils
// hanging from a shared headline, with optional upper/lower modifiers,
// seeded jitter, skew/slant distortion and noise; the per-pixel zone
// ground truth and character spans are recorded alongside.

// Zone labels used in ground-truth maps (stored as RasterImage samples).
enum ZoneLabel : std::uint8_t {
  kZoneBackground = 0,
  kZoneUpper = 1,
  kZoneMiddle = 2,
  kZoneLower = 3,
};

struct AlphabetSpec {
  std::vector<std::string> middle;  // glyph symbols
  std::vector<std::string> upper;   // upper-zone modifier symbols
  std::vector<std::string> lower;   // lower-zone modifier symbols

  // Layout (pixels). The headline spans the full word; glyphs hang from it.
  int cell_width = 24;
  int middle_height = 30;
  int upper_height = 12;
  int lower_height = 12;
  int stroke = 3;
  int glyph_gap = 4;
  int margin = 3;

  int middle_index(const std::string& sym) const;
  int upper_index(const std::string& sym) const;
  int lower_index(const std::string& sym) const;
};

// 10 middle glyphs (a..j), 3 upper modifiers (A..C), 2 lower (x, y).
AlphabetSpec toy_alphabet();

// A word as its zone decomposition: middle symbols plus modifiers bound to
// middle positions.
struct WordSpec {
  std::vector<std::string> middle;
  std::vector<std::pair<std::string, int>> upper;  // (symbol, middle index)
  std::vector<std::pair<std::string, int>> lower;

  std::string middle_string() const;
  // One token per middle character: middle symbol, then the attached upper
  // symbol if any, then the attached lower symbol if any.
  std::vector<std::string> cluster_tokens() const;
  std::string full_string() const;  // concatenated cluster tokens
};

struct DistortOptions {
  bool jitter = true;
  double skew_deg = 0.0;
  double slant_deg = 0.0;
  double noise_level = 0.0;
  std::uint64_t noise_seed = 0;
  double touching_lower_prob = 0.25;  // chance a lower modifier touches
};

struct RenderedWord {
  RasterImage gray;
  RasterImage zone_labels;  // ZoneLabel values, same canvas as gray
  std::vector<std::pair<int, int>> char_spans;  // inclusive column spans,
                                                // pre-distortion coordinates
  int matra_row = 0;      // pre-distortion headline center row
  int baseline_row = 0;   // pre-distortion
  WordSpec word;
  double applied_skew = 0.0;
  double applied_slant = 0.0;
};

WordSpec random_word(const AlphabetSpec& alphabet, Rng& rng, int min_len = 2,
                     int max_len = 7, double upper_prob = 0.3,
                     double lower_prob = 0.25);

RenderedWord render_word(const AlphabetSpec& alphabet, const WordSpec& word,
                         Rng& rng, const DistortOptions& distort);

// Isolated modifier render (for classifier training corpora). Lower-zone
// samples can carry the attachment stem seen when a touching modifier is
// cut from the word body.
BinaryImage render_modifier(const AlphabetSpec& alphabet,
                            const std::string& symbol, bool upper_zone,
                            Rng& rng, bool with_stem = false);

// A random glyph-stroke fragment; used as the rejection class when training
// the lower-zone classifier.
BinaryImage render_fragment(const AlphabetSpec& alphabet, Rng& rng);

}  // namespace zonerec
