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

#include "zonerec/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "zonerec/utf8.hpp"

namespace zonerec {

namespace {

std::string parts_key(const std::string& middle, const std::string& upper,
                      const std::string& lower) {
  return middle + "\x1f" + upper + "\x1f" + lower;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, '\t')) out.push_back(field);
  return out;
}

std::string field_or_dash(const std::vector<std::string>& symbols) {
  if (symbols.empty()) return "-";
  return join_symbols(symbols);
}

std::vector<std::string> symbols_or_empty(const std::string& field) {
  if (field == "-" || field.empty()) return {};
  return split_symbols(field);
}

}  // namespace

void ZoneTable::add(ZoneTableEntry entry) {
  if (entry.cluster.empty() || entry.middle.empty())
    throw InputError("zone table: cluster and middle symbols are required");
  const std::string key = parts_key(join_symbols(entry.middle),
                                    join_symbols(entry.upper),
                                    join_symbols(entry.lower));
  max_cluster_bytes_ = std::max(max_cluster_bytes_, entry.cluster.size());
  by_cluster_.emplace(entry.cluster, entries_.size());
  by_parts_.emplace(key, entries_.size());
  entries_.push_back(std::move(entry));
}

const ZoneTableEntry* ZoneTable::find_cluster(const std::string& cluster) const {
  const auto it = by_cluster_.find(cluster);
  return it == by_cluster_.end() ? nullptr : &entries_[it->second];
}

const ZoneTableEntry* ZoneTable::find_decomposition(
    const std::string& middle, const std::string& upper,
    const std::string& lower) const {
  const auto it = by_parts_.find(parts_key(middle, upper, lower));
  return it == by_parts_.end() ? nullptr : &entries_[it->second];
}

std::vector<std::string> ZoneTable::tokenize(const std::string& word) const {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos < word.size()) {
    size_t take = std::min(max_cluster_bytes_, word.size() - pos);
    bool matched = false;
    for (; take > 0; --take) {
      const std::string piece = word.substr(pos, take);
      if (by_cluster_.count(piece)) {
        out.push_back(piece);
        pos += take;
        matched = true;
        break;
      }
    }
    if (!matched)
      throw InputError("zone table: word '" + word +
                       "' is not decomposable at byte " + std::to_string(pos));
  }
  return out;
}

ZoneTable load_zone_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open zone table " + path);
  ZoneTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> fields = split_tabs(line);
    if (fields.size() != 5)
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": expected 5 tab-separated fields");
    ZoneTableEntry e;
    e.cluster = fields[0];
    e.upper = symbols_or_empty(fields[1]);
    e.middle = symbols_or_empty(fields[2]);
    e.lower = symbols_or_empty(fields[3]);
    e.attach = std::stoi(fields[4]);
    table.add(std::move(e));
  }
  return table;
}

void save_zone_table(const std::string& path, const ZoneTable& table) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << "# cluster\tupper\tmiddle\tlower\tattach\n";
  for (const ZoneTableEntry& e : table.entries()) {
    out << e.cluster << '\t' << field_or_dash(e.upper) << '\t'
        << field_or_dash(e.middle) << '\t' << field_or_dash(e.lower) << '\t'
        << e.attach << '\n';
  }
  if (!out) throw InputError("write failed: " + path);
}

ZoneTable zone_table_for(const AlphabetSpec& alphabet) {
  ZoneTable table;
  std::vector<std::string> uppers{""};
  for (const auto& u : alphabet.upper) uppers.push_back(u);
  std::vector<std::string> lowers{""};
  for (const auto& l : alphabet.lower) lowers.push_back(l);
  for (const auto& m : alphabet.middle) {
    for (const auto& u : uppers) {
      for (const auto& l : lowers) {
        ZoneTableEntry e;
        e.cluster = m + u + l;
        if (!u.empty()) e.upper.push_back(u);
        e.middle.push_back(m);
        if (!l.empty()) e.lower.push_back(l);
        e.attach = 0;
        table.add(std::move(e));
      }
    }
  }
  return table;
}

void Lexicon::rebuild_projection() {
  std::set<std::string> seen;
  middle_projection.clear();
  by_middle.clear();
  for (size_t i = 0; i < entries.size(); ++i) {
    const std::string middle = join_symbols(entries[i].middle);
    by_middle[middle].push_back(static_cast<int>(i));
    if (seen.insert(middle).second) middle_projection.push_back(middle);
  }
  std::sort(middle_projection.begin(), middle_projection.end());
}

Lexicon load_lexicon(const std::string& path, const ZoneTable& table) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open lexicon " + path);
  Lexicon lex;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> fields = split_tabs(line);
    if (fields.size() != 5)
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": expected 5 tab-separated fields");
    LexiconEntry e;
    e.full = fields[0];
    e.middle = symbols_or_empty(fields[2]);
    const std::vector<std::string> uppers = symbols_or_empty(fields[1]);
    const std::vector<std::string> lowers = symbols_or_empty(fields[3]);

    std::vector<std::pair<char, int>> attachments;
    if (fields[4] != "-" && !fields[4].empty()) {
      std::istringstream ss(fields[4]);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item.size() < 2 || (item[0] != 'U' && item[0] != 'L'))
          throw InputError(path + ":" + std::to_string(line_no) +
                           ": bad attachment '" + item + "'");
        attachments.emplace_back(item[0], std::stoi(item.substr(1)));
      }
    }
    size_t iu = 0, il = 0;
    for (const auto& [zone, idx] : attachments) {
      if (zone == 'U') {
        if (iu >= uppers.size())
          throw InputError(path + ":" + std::to_string(line_no) +
                           ": more U attachments than upper symbols");
        e.upper.emplace_back(uppers[iu++], idx);
      } else {
        if (il >= lowers.size())
          throw InputError(path + ":" + std::to_string(line_no) +
                           ": more L attachments than lower symbols");
        e.lower.emplace_back(lowers[il++], idx);
      }
    }
    if (iu != uppers.size() || il != lowers.size())
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": attachment count does not match modifier symbols");

    // The full word must recompose through the zone table.
    e.clusters = table.tokenize(e.full);
    lex.entries.push_back(std::move(e));
  }
  lex.rebuild_projection();
  return lex;
}

void save_lexicon(const std::string& path, const Lexicon& lexicon) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << "# full_word\tupper\tmiddle\tlower\tattachments\n";
  for (const LexiconEntry& e : lexicon.entries) {
    std::string uppers, lowers, attach;
    for (const auto& [sym, idx] : e.upper) {
      uppers += sym;
      attach += (attach.empty() ? "" : ",") + ("U" + std::to_string(idx));
    }
    for (const auto& [sym, idx] : e.lower) {
      lowers += sym;
      attach += (attach.empty() ? "" : ",") + ("L" + std::to_string(idx));
    }
    out << e.full << '\t' << (uppers.empty() ? "-" : uppers) << '\t'
        << join_symbols(e.middle) << '\t' << (lowers.empty() ? "-" : lowers)
        << '\t' << (attach.empty() ? "-" : attach) << '\n';
  }
  if (!out) throw InputError("write failed: " + path);
}

LexiconEntry entry_from_word(const WordSpec& word) {
  LexiconEntry e;
  e.full = word.full_string();
  e.clusters = word.cluster_tokens();
  e.middle = word.middle;
  e.upper = word.upper;
  e.lower = word.lower;
  std::sort(e.upper.begin(), e.upper.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  std::sort(e.lower.begin(), e.lower.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  return e;
}

Lexicon lexicon_from_words(const std::vector<WordSpec>& words) {
  Lexicon lex;
  for (const WordSpec& w : words) lex.entries.push_back(entry_from_word(w));
  lex.rebuild_projection();
  return lex;
}

}  // namespace zonerec
