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

#include <array>
#include <map>
#include <string>
#include <vector>

#include "zonerec/combiner.hpp"
#include "zonerec/synth.hpp"

namespace zonerec {

struct ManifestRow {
  std::string image_path;
  std::string word;
  std::string split;  // train / val / test
};

struct Manifest {
  std::vector<ManifestRow> rows;
  std::vector<const ManifestRow*> split(const std::string& name) const;
};

// UTF-8 TSV: image_path, transcription, split. Paths are checked at load;
// with a zone table supplied, transcriptions must decompose through it.
Manifest load_manifest(const std::string& path,
                       const ZoneTable* table = nullptr);
void save_manifest(const std::string& path, const Manifest& manifest);

struct SynthOptions {
  int lexicon_words = 100;
  int train = 2000;
  int val = 0;
  int test = 400;
  std::uint64_t seed = 1;
  int min_len = 2;
  int max_len = 7;
  double upper_prob = 0.3;
  double lower_prob = 0.25;
  double touching_lower_prob = 0.25;
  bool distort = true;        // jitter + skew/slant
  double skew_limit = 10.0;   // degrees
  double slant_limit = 15.0;
  double noise_level = 0.0;
  bool write_ground_truth = true;
};

struct SynthResult {
  Manifest manifest;
  Lexicon lexicon;
  ZoneTable table;
  std::string manifest_path;
  std::string lexicon_path;
  std::string zone_table_path;
  std::string gt_dir;  // empty when ground truth was not written
};

// Renders a seeded corpus under out_dir: images/, gt/ (zone label maps),
// manifest.tsv, lexicon.tsv, zone_table.tsv. Identical seeds give
// byte-identical output trees.
SynthResult synth_corpus(const AlphabetSpec& alphabet,
                         const SynthOptions& options,
                         const std::string& out_dir);

struct EvalReport {
  int n_words = 0;
  int degenerate = 0;
  std::array<int, 5> topk_correct{};  // cumulative hits for k = 1..5
  std::map<int, std::pair<int, int>> by_length;  // correct, total (top-1)
  long long char_errors = 0;
  long long char_total = 0;
  std::array<int, 3> zone_types{};  // words by zone quality class 1..3
  bool zone_types_known = false;

  double top_k(int k) const {
    return n_words == 0
               ? 0.0
               : static_cast<double>(topk_correct[k - 1]) / n_words;
  }
  double char_accuracy() const {
    return char_total == 0
               ? 0.0
               : 1.0 - static_cast<double>(char_errors) / char_total;
  }
};

// Runs the recognizer over one manifest split and aggregates the report.
// Zone quality classes need the generator's label maps (gt_dir); class 1 is
// at most 1% mislabeled ink, class 2 at most 10%, class 3 the rest.
EvalReport evaluate(const Manifest& manifest, const Recognizer& rec,
                    int nbest_n, const std::string& split = "test",
                    const std::string& gt_dir = "");

struct NoiseRunOptions {
  std::vector<double> levels{0.1, 0.2, 0.3};
  bool prestep = true;  // smoothing + closing before recognition
  std::uint64_t seed = 1;
  int nbest_n = 5;
  std::string split = "test";
};

struct NoiseLevelResult {
  double level = 0.0;
  EvalReport report;
};

// Degrades every image with seeded Gaussian noise, optionally applies the
// smoothing-and-closing repair, and re-evaluates per level. Level 0 is the
// plain pipeline.
std::vector<NoiseLevelResult> noise_experiment(const Manifest& manifest,
                                               const Recognizer& rec,
                                               const NoiseRunOptions& options);

// Classifier training corpora for the toy alphabet: isolated modifier
// renders (lower-zone samples include stem-attached variants) plus stroke
// fragments for the lower zone's rejection class.
struct ModifierTrainingSet {
  std::vector<std::vector<double>> features;
  std::vector<int> label_ids;
  std::vector<std::string> label_names;
};

ModifierTrainingSet modifier_training_set(const AlphabetSpec& alphabet,
                                          bool upper_zone, int per_class,
                                          std::uint64_t seed);

}  // namespace zonerec
