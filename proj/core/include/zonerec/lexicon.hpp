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

#include <map>
#include <string>
#include <vector>

#include "zonerec/common.hpp"
#include "zonerec/synth.hpp"

namespace zonerec {

// One grapheme cluster and its zone decomposition. The attach index names
// the middle symbol a modifier visually binds to (always 0 for clusters
// with a single middle symbol).
struct ZoneTableEntry {
  std::string cluster;
  std::vector<std::string> upper;
  std::vector<std::string> middle;
  std::vector<std::string> lower;
  int attach = 0;
};

class ZoneTable {
 public:
  void add(ZoneTableEntry entry);
  const std::vector<ZoneTableEntry>& entries() const { return entries_; }

  const ZoneTableEntry* find_cluster(const std::string& cluster) const;
  // Reverse lookup: the cluster for (middle, upper?, lower?) symbols.
  const ZoneTableEntry* find_decomposition(const std::string& middle,
                                           const std::string& upper,
                                           const std::string& lower) const;

  // Greedy longest-match tokenization of a full word into cluster tokens;
  // throws InputError when the word is not decomposable.
  std::vector<std::string> tokenize(const std::string& word) const;

 private:
  std::vector<ZoneTableEntry> entries_;
  std::map<std::string, size_t> by_cluster_;
  std::map<std::string, size_t> by_parts_;
  size_t max_cluster_bytes_ = 0;
};

// Tab-separated rows: cluster, upper, middle, lower, attach ('-' = empty).
ZoneTable load_zone_table(const std::string& path);
void save_zone_table(const std::string& path, const ZoneTable& table);

// Full cross-product table for a synthetic alphabet (every middle symbol
// with every optional upper/lower modifier combination).
ZoneTable zone_table_for(const AlphabetSpec& alphabet);

struct LexiconEntry {
  std::string full;
  std::vector<std::string> clusters;
  std::vector<std::string> middle;                  // flattened symbols
  std::vector<std::pair<std::string, int>> upper;   // symbol, middle index
  std::vector<std::pair<std::string, int>> lower;
};

struct Lexicon {
  std::vector<LexiconEntry> entries;
  std::vector<std::string> middle_projection;  // deduplicated, sorted
  std::map<std::string, std::vector<int>> by_middle;

  void rebuild_projection();
};

// Rows: full_word TAB upper TAB middle TAB lower TAB attachments.
// Attachments name each modifier as U<idx> or L<idx> joined by commas.
Lexicon load_lexicon(const std::string& path, const ZoneTable& table);
void save_lexicon(const std::string& path, const Lexicon& lexicon);

LexiconEntry entry_from_word(const WordSpec& word);
Lexicon lexicon_from_words(const std::vector<WordSpec>& words);

}  // namespace zonerec
