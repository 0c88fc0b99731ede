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

#include "zonerec/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "zonerec/parallel.hpp"
#include "zonerec/preprocess.hpp"
#include "zonerec/raster_io.hpp"
#include "zonerec/utf8.hpp"

namespace zonerec {

namespace fs = std::filesystem;

std::vector<const ManifestRow*> Manifest::split(const std::string& name) const {
  std::vector<const ManifestRow*> out;
  for (const ManifestRow& row : rows)
    if (row.split == name) out.push_back(&row);
  return out;
}

Manifest load_manifest(const std::string& path, const ZoneTable* table) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest " + path);
  const fs::path base = fs::path(path).parent_path();
  Manifest manifest;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    ManifestRow row;
    std::getline(ss, row.image_path, '\t');
    std::getline(ss, row.word, '\t');
    std::getline(ss, row.split, '\t');
    if (row.image_path.empty() || row.word.empty())
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": expected image_path TAB word [TAB split]");
    if (row.split.empty()) row.split = "test";
    fs::path img = row.image_path;
    if (img.is_relative()) img = base / img;
    row.image_path = img.string();
    if (!fs::exists(img))
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": image does not exist: " + row.image_path);
    if (table) table->tokenize(row.word);  // throws when not decomposable
    manifest.rows.push_back(std::move(row));
  }
  return manifest;
}

void save_manifest(const std::string& path, const Manifest& manifest) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << "# image_path\tword\tsplit\n";
  for (const ManifestRow& row : manifest.rows)
    out << row.image_path << '\t' << row.word << '\t' << row.split << '\n';
  if (!out) throw InputError("write failed: " + path);
}

SynthResult synth_corpus(const AlphabetSpec& alphabet,
                         const SynthOptions& options,
                         const std::string& out_dir) {
  if (alphabet.middle.size() < 5 || alphabet.upper.size() < 2 ||
      alphabet.lower.size() < 2)
    throw InputError(
        "synth_corpus: alphabet needs >= 5 middle, >= 2 upper, >= 2 lower "
        "glyphs");
  if (options.lexicon_words < 1) throw InputError("synth_corpus: empty lexicon");

  fs::create_directories(fs::path(out_dir) / "images");
  if (options.write_ground_truth)
    fs::create_directories(fs::path(out_dir) / "gt");

  SynthResult result;
  result.table = zone_table_for(alphabet);

  // lexicon: unique random words
  Rng rng(options.seed);
  std::vector<WordSpec> words;
  std::set<std::string> seen;
  int guard = 0;
  while (static_cast<int>(words.size()) < options.lexicon_words) {
    if (++guard > options.lexicon_words * 200)
      throw InputError("synth_corpus: cannot draw enough unique words");
    WordSpec w = random_word(alphabet, rng, options.min_len, options.max_len,
                             options.upper_prob, options.lower_prob);
    if (seen.insert(w.full_string()).second) words.push_back(std::move(w));
  }
  result.lexicon = lexicon_from_words(words);

  const std::vector<std::pair<std::string, int>> splits{
      {"train", options.train}, {"val", options.val}, {"test", options.test}};

  std::ofstream bounds_out(fs::path(out_dir) / "boundaries.tsv");
  bounds_out << "# image\tmatra_row\tskew\tslant\tchar_spans\n";

  int index = 0;
  for (const auto& [split_name, count] : splits) {
    for (int i = 0; i < count; ++i, ++index) {
      Rng row_rng(Rng::mix(options.seed ^ (0xA0761D6478BD642Full *
                                           (static_cast<std::uint64_t>(index) +
                                            1))));
      const WordSpec& word =
          words[row_rng.uniform_int(0, static_cast<int>(words.size()) - 1)];
      DistortOptions d;
      d.jitter = options.distort;
      d.touching_lower_prob = options.touching_lower_prob;
      if (options.distort) {
        d.skew_deg = row_rng.uniform(-options.skew_limit, options.skew_limit);
        d.slant_deg =
            row_rng.uniform(-options.slant_limit, options.slant_limit);
      }
      if (options.noise_level > 0.0) {
        d.noise_level = options.noise_level;
        d.noise_seed = row_rng.next_u64();
      }
      const RenderedWord rw = render_word(alphabet, word, row_rng, d);

      char name[32];
      std::snprintf(name, sizeof name, "w%05d.pgm", index);
      const fs::path img_path = fs::path(out_dir) / "images" / name;
      write_pgm(img_path.string(), rw.gray);
      if (options.write_ground_truth) {
        const fs::path gt_path = fs::path(out_dir) / "gt" / name;
        write_pgm(gt_path.string(), rw.zone_labels);
      }

      bounds_out << name << '\t' << rw.matra_row << '\t' << rw.applied_skew
                 << '\t' << rw.applied_slant << '\t';
      for (size_t k = 0; k < rw.char_spans.size(); ++k)
        bounds_out << (k ? "," : "") << rw.char_spans[k].first << '-'
                   << rw.char_spans[k].second;
      bounds_out << '\n';

      ManifestRow row;
      row.image_path = (fs::path("images") / name).string();
      row.word = word.full_string();
      row.split = split_name;
      result.manifest.rows.push_back(std::move(row));
    }
  }

  result.manifest_path = (fs::path(out_dir) / "manifest.tsv").string();
  result.lexicon_path = (fs::path(out_dir) / "lexicon.tsv").string();
  result.zone_table_path = (fs::path(out_dir) / "zone_table.tsv").string();
  result.gt_dir =
      options.write_ground_truth ? (fs::path(out_dir) / "gt").string() : "";
  save_manifest(result.manifest_path, result.manifest);
  save_lexicon(result.lexicon_path, result.lexicon);
  save_zone_table(result.zone_table_path, result.table);

  // re-anchor manifest paths for in-memory use
  for (ManifestRow& row : result.manifest.rows)
    row.image_path = (fs::path(out_dir) / row.image_path).string();
  return result;
}

namespace {

int zone_mismatch_class(const WordResult& res, const RasterImage& gt_raw) {
  // The recognizer works on the deskewed/deslanted word; carry the label
  // map through the same corrections before comparing.
  RasterImage gt = gt_raw;
  gt = correct_skew(gt, res.skew_deg, Interp::Nearest, 0);
  gt = correct_slant(gt, res.slant_deg, Interp::Nearest, 0);

  const BinaryImage& bin = res.corrected;
  if (gt.width != bin.width || gt.height != bin.height) return 3;
  int total = 0, wrong = 0;
  for (int r = 0; r < bin.height; ++r)
    for (int c = 0; c < bin.width; ++c) {
      if (!bin.get(r, c)) continue;
      ++total;
      const int got = res.zones.upper.get(r, c)    ? kZoneUpper
                      : res.zones.middle.get(r, c) ? kZoneMiddle
                                                   : kZoneLower;
      const int expect = gt.at(r, c);
      if (expect != kZoneBackground && got != expect) ++wrong;
    }
  if (total == 0) return 3;
  const double err = static_cast<double>(wrong) / total;
  if (err <= 0.01) return 1;
  if (err <= 0.10) return 2;
  return 3;
}

void score_result(const WordResult& res, const ManifestRow& row,
                  const ZoneTable& table, EvalReport& report) {
  ++report.n_words;
  const std::vector<std::string> truth = table.tokenize(row.word);
  const int len = static_cast<int>(truth.size());
  auto& bucket = report.by_length[len];
  ++bucket.second;
  report.char_total += len;

  if (res.degenerate || res.ranked.empty()) {
    ++report.degenerate;
    report.char_errors += len;
    return;
  }
  int rank = -1;
  for (size_t k = 0; k < res.ranked.size() && k < 5; ++k)
    if (res.ranked[k].word == row.word) {
      rank = static_cast<int>(k);
      break;
    }
  for (int k = 0; k < 5; ++k)
    if (rank >= 0 && rank <= k) ++report.topk_correct[k];
  if (rank == 0) ++bucket.first;

  report.char_errors +=
      levenshtein(table.tokenize(res.ranked[0].word), truth);
}

void merge_reports(EvalReport& into, const EvalReport& from) {
  into.n_words += from.n_words;
  into.degenerate += from.degenerate;
  for (int k = 0; k < 5; ++k) into.topk_correct[k] += from.topk_correct[k];
  for (const auto& [len, counts] : from.by_length) {
    auto& bucket = into.by_length[len];
    bucket.first += counts.first;
    bucket.second += counts.second;
  }
  into.char_errors += from.char_errors;
  into.char_total += from.char_total;
  for (int i = 0; i < 3; ++i) into.zone_types[i] += from.zone_types[i];
  into.zone_types_known = into.zone_types_known || from.zone_types_known;
}

}  // namespace

EvalReport evaluate(const Manifest& manifest, const Recognizer& rec,
                    int nbest_n, const std::string& split,
                    const std::string& gt_dir) {
  const std::vector<const ManifestRow*> rows = manifest.split(split);
  if (rows.empty()) throw InputError("evaluate: no rows in split " + split);

  std::vector<EvalReport> chunk_reports(kParallelChunks);
  run_chunks(static_cast<int>(rows.size()), [&](int chunk, int begin, int end) {
    EvalReport& report = chunk_reports[chunk];
    for (int i = begin; i < end; ++i) {
      const ManifestRow& row = *rows[i];
      const RasterImage gray = read_image(row.image_path);
      const WordResult res = recognize_word(gray, rec, nbest_n);
      score_result(res, row, rec.table, report);
      if (!gt_dir.empty() && !res.degenerate) {
        const fs::path gt_path =
            fs::path(gt_dir) / fs::path(row.image_path).filename();
        if (fs::exists(gt_path)) {
          const int cls = zone_mismatch_class(res, read_pgm(gt_path.string()));
          ++report.zone_types[cls - 1];
          report.zone_types_known = true;
        }
      }
    }
  });

  EvalReport report;
  for (const EvalReport& r : chunk_reports) merge_reports(report, r);
  return report;
}

std::vector<NoiseLevelResult> noise_experiment(const Manifest& manifest,
                                               const Recognizer& rec,
                                               const NoiseRunOptions& options) {
  const std::vector<const ManifestRow*> rows = manifest.split(options.split);
  if (rows.empty())
    throw InputError("noise_experiment: no rows in split " + options.split);

  std::vector<NoiseLevelResult> out;
  for (double level : options.levels) {
    std::vector<EvalReport> chunk_reports(kParallelChunks);
    run_chunks(
        static_cast<int>(rows.size()), [&](int chunk, int begin, int end) {
          EvalReport& report = chunk_reports[chunk];
          for (int i = begin; i < end; ++i) {
            const ManifestRow& row = *rows[i];
            RasterImage gray = read_image(row.image_path);
            WordResult res;
            if (level <= 0.0) {
              res = recognize_word(gray, rec, options.nbest_n);
            } else {
              gray = add_noise(
                  gray, level,
                  Rng::mix(options.seed ^
                           (0x9E3779B97F4A7C15ull *
                            (static_cast<std::uint64_t>(i) + 1))));
              if (options.prestep) gray = gaussian_smooth(gray, 1.0);
              const OtsuResult otsu = otsu_binarize(gray);
              if (otsu.degenerate || otsu.image.foreground_count() == 0) {
                res.degenerate = true;
              } else {
                BinaryImage bin = otsu.image;
                if (options.prestep) {
                  const StrokeWidth sw = stroke_width(bin);
                  bin = morph_close(bin, std::max(1, (sw.value + 1) / 2));
                }
                res = recognize_word_binary(bin, rec, options.nbest_n);
              }
            }
            score_result(res, row, rec.table, report);
          }
        });
    NoiseLevelResult lvl;
    lvl.level = level;
    for (const EvalReport& r : chunk_reports) merge_reports(lvl.report, r);
    out.push_back(std::move(lvl));
  }
  return out;
}

ModifierTrainingSet modifier_training_set(const AlphabetSpec& alphabet,
                                          bool upper_zone, int per_class,
                                          std::uint64_t seed) {
  ModifierTrainingSet set;
  set.label_names = upper_zone ? alphabet.upper : alphabet.lower;
  if (!upper_zone) set.label_names.push_back(kRejectLabel);

  Rng rng(seed);
  for (size_t cls = 0; cls < set.label_names.size(); ++cls) {
    const std::string& label = set.label_names[cls];
    for (int i = 0; i < per_class; ++i) {
      BinaryImage sample;
      if (label == kRejectLabel) {
        sample = render_fragment(alphabet, rng);
      } else {
        const bool with_stem = !upper_zone && rng.bernoulli(0.5);
        sample = render_modifier(alphabet, label, upper_zone, rng, with_stem);
      }
      const BBox box = sample.foreground_bbox();
      set.features.push_back(glyph_features(crop(sample, box), 150));
      set.label_ids.push_back(static_cast<int>(cls));
    }
  }
  return set;
}

}  // namespace zonerec
