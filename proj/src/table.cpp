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

#include "score/table.hpp"

#include <algorithm>
#include <tuple>

#include <fmt/format.h>

#include "score/error.hpp"

namespace score {
namespace {

constexpr long long kMaxGridArea = 10'000'000;

std::string describe(const TableCell& c) {
  return fmt::format("cell at (row={}, col={}, rowspan={}, colspan={}) \"{}\"", c.row, c.col,
                     c.rowspan, c.colspan, c.content);
}

}  // namespace

NormalizedTable::NormalizedTable(std::vector<TableCell> cells) : cells_(std::move(cells)) {
  std::sort(cells_.begin(), cells_.end(), [](const TableCell& a, const TableCell& b) {
    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
  });

  long long rows = 0;
  long long cols = 0;
  for (const auto& c : cells_) {
    if (c.row < 0 || c.col < 0 || c.rowspan < 1 || c.colspan < 1) {
      throw Error(ErrorCode::MalformedInput, "invalid geometry for " + describe(c));
    }
    rows = std::max(rows, static_cast<long long>(c.row) + c.rowspan);
    cols = std::max(cols, static_cast<long long>(c.col) + c.colspan);
  }
  if (rows * cols > kMaxGridArea) {
    throw Error(ErrorCode::MalformedInput,
                fmt::format("table grid {}x{} exceeds the supported size", rows, cols));
  }
  n_rows_ = static_cast<int>(rows);
  n_cols_ = static_cast<int>(cols);
  occupancy_.assign(static_cast<std::size_t>(rows * cols), -1);

  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const auto& c = cells_[i];
    for (int r = c.row; r < c.row + c.rowspan; ++r) {
      for (int k = c.col; k < c.col + c.colspan; ++k) {
        int& slot = occupancy_[static_cast<std::size_t>(r) * n_cols_ + k];
        if (slot >= 0) {
          throw Error(ErrorCode::OverlappingCells,
                      fmt::format("{} and {} both cover (row={}, col={})",
                                  describe(cells_[static_cast<std::size_t>(slot)]), describe(c),
                                  r, k));
        }
        slot = static_cast<int>(i);
      }
    }
  }
}

const TableCell* NormalizedTable::covering(int row, int col) const {
  if (row < 0 || col < 0 || row >= n_rows_ || col >= n_cols_) return nullptr;
  const int slot = occupancy_[static_cast<std::size_t>(row) * n_cols_ + col];
  return slot < 0 ? nullptr : &cells_[static_cast<std::size_t>(slot)];
}

std::string NormalizedTable::text() const {
  std::string out;
  for (const auto& c : cells_) {
    if (c.content.empty()) continue;
    if (!out.empty()) out += ' ';
    out += c.content;
  }
  return out;
}

}  // namespace score
