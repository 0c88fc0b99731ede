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
#include <stdexcept>
#include <string>

namespace zonerec {

// Raised when user-supplied data (files, flags, images) is unusable.
// The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a trained model is missing, malformed, or incompatible.
// The CLI maps it to exit code 3.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

struct Coord {
  int row = 0;
  int col = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

// Inclusive pixel bounding box.
struct BBox {
  int row0 = 0;
  int col0 = 0;
  int row1 = -1;
  int col1 = -1;

  bool empty() const { return row1 < row0 || col1 < col0; }
  int height() const { return empty() ? 0 : row1 - row0 + 1; }
  int width() const { return empty() ? 0 : col1 - col0 + 1; }
  bool contains(Coord p) const {
    return p.row >= row0 && p.row <= row1 && p.col >= col0 && p.col <= col1;
  }
  void expand(Coord p) {
    if (empty()) {
      row0 = row1 = p.row;
      col0 = col1 = p.col;
    } else {
      if (p.row < row0) row0 = p.row;
      if (p.row > row1) row1 = p.row;
      if (p.col < col0) col0 = p.col;
      if (p.col > col1) col1 = p.col;
    }
  }
  friend bool operator==(const BBox&, const BBox&) = default;
};

}  // namespace zonerec
