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

#include "zonerec/common.hpp"

namespace zonerec {

// Splits a UTF-8 string into codepoint symbols. Zone symbols are single
// codepoints by convention; malformed input throws.
inline std::vector<std::string> split_symbols(const std::string& s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    const unsigned char b = static_cast<unsigned char>(s[i]);
    size_t len = 1;
    if (b >= 0xF0) len = 4;
    else if (b >= 0xE0) len = 3;
    else if (b >= 0xC0) len = 2;
    else if (b >= 0x80) throw InputError("split_symbols: malformed UTF-8");
    if (i + len > s.size())
      throw InputError("split_symbols: truncated UTF-8 sequence");
    out.push_back(s.substr(i, len));
    i += len;
  }
  return out;
}

inline std::string join_symbols(const std::vector<std::string>& symbols) {
  std::string out;
  for (const auto& s : symbols) out += s;
  return out;
}

}  // namespace zonerec
