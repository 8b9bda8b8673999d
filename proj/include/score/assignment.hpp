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

#ifndef SCORE_ASSIGNMENT_HPP
#define SCORE_ASSIGNMENT_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace score {

// Maximum-weight bipartite assignment (Kuhn-Munkres, O(n^3)) on a row-major
// rows x cols matrix of non-negative weights. Result[r] is the column given
// to row r, or -1 when r is left unassigned (more rows than columns).
// Zero-weight assignments are returned as well; callers filter them.
std::vector<int> max_weight_assignment(std::span<const double> weights, std::size_t rows,
                                       std::size_t cols);

}  // namespace score

#endif  // SCORE_ASSIGNMENT_HPP
