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

#include "score/assignment.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace score {

std::vector<int> max_weight_assignment(std::span<const double> weights, std::size_t rows,
                                       std::size_t cols) {
  if (weights.size() != rows * cols) {
    throw std::invalid_argument("max_weight_assignment: matrix size mismatch");
  }
  const std::size_t n = std::max(rows, cols);
  std::vector<int> result(rows, -1);
  if (n == 0) return result;

  double max_weight = 0.0;
  for (double w : weights) max_weight = std::max(max_weight, w);
  // Square cost matrix (1-based, padded with max_weight i.e. weight 0).
  auto cost = [&](std::size_t r, std::size_t c) {
    if (r > rows || c > cols) return max_weight;
    return max_weight - weights[(r - 1) * cols + (c - 1)];
  };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0);
  std::vector<double> v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0);  // match[col] = row
  std::vector<std::size_t> way(n + 1, 0);

  for (std::size_t r = 1; r <= n; ++r) {
    match[0] = r;
    std::size_t col0 = 0;
    std::vector<double> min_slack(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[col0] = 1;
      const std::size_t row0 = match[col0];
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double reduced = cost(row0, c) - u[row0] - v[c];
        if (reduced < min_slack[c]) {
          min_slack[c] = reduced;
          way[c] = col0;
        }
        if (min_slack[c] < delta) {
          delta = min_slack[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= n; ++c) {
        if (used[c]) {
          u[match[c]] += delta;
          v[c] -= delta;
        } else {
          min_slack[c] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  for (std::size_t c = 1; c <= n; ++c) {
    const std::size_t r = match[c];
    if (r >= 1 && r <= rows && c <= cols) result[r - 1] = static_cast<int>(c - 1);
  }
  return result;
}

}  // namespace score
