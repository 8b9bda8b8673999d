// Copyright 2026 The score-eval Authors
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

#ifndef SCORE_TABLE_HPP
#define SCORE_TABLE_HPP

#include <compare>
#include <string>
#include <vector>

namespace score {

struct TableCell {
  int row = 0;
  int col = 0;
  int rowspan = 1;
  int colspan = 1;
  std::string content;

  auto operator<=>(const TableCell&) const = default;
};

// Format-agnostic table: a set of anchored cells whose expanded spans never
// collide. Every parser in ingest produces this, which is what makes the
// HTML, row/col JSON and coordinate encodings comparable.
class NormalizedTable {
 public:
  NormalizedTable() = default;

  // Sorts by (row, col) and checks occupancy. Throws Error{OverlappingCells}
  // naming both offenders, or Error{MalformedInput} for negative anchors,
  // spans below 1 or an implausibly large grid.
  explicit NormalizedTable(std::vector<TableCell> cells);

  const std::vector<TableCell>& cells() const { return cells_; }
  bool empty() const { return cells_.empty(); }
  int n_rows() const { return n_rows_; }
  int n_cols() const { return n_cols_; }

  // Cell whose span covers (row, col), or nullptr. Out-of-range is nullptr.
  const TableCell* covering(int row, int col) const;

  // Non-empty cell contents in (row, col) order, single-space separated.
  std::string text() const;

  friend bool operator==(const NormalizedTable& a, const NormalizedTable& b) {
    return a.cells_ == b.cells_;
  }

 private:
  std::vector<TableCell> cells_;
  std::vector<int> occupancy_;  // n_rows_ * n_cols_, index into cells_ or -1
  int n_rows_ = 0;
  int n_cols_ = 0;
};

}  // namespace score

#endif  // SCORE_TABLE_HPP
