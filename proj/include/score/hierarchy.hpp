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

#ifndef SCORE_HIERARCHY_HPP
#define SCORE_HIERARCHY_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "score/category.hpp"
#include "score/document.hpp"

namespace score {

struct ElementPair {
  std::size_t gt = 0;    // index into gt.elements
  std::size_t pred = 0;  // index into pred.elements
  double score = 0.0;

  friend bool operator==(const ElementPair&, const ElementPair&) = default;
};

using ElementMatching = std::vector<ElementPair>;

// One-to-one matching by NED of element texts. Pairs scoring at least
// sim_threshold are accepted best first; ties prefer the smaller reading
// order distance, then the earlier GT element, then the earlier prediction.
// Result is sorted by GT source order.
// Throws Error{InvalidThreshold} unless 0 <= sim_threshold <= 1.
ElementMatching match_elements(const DocumentPage& gt, const DocumentPage& pred,
                               double sim_threshold = 0.5);

// Counts over categories plus a trailing NOMATCH row/column.
class ConfusionMatrix {
 public:
  static constexpr std::size_t kSize = kCategoryCount + 1;
  static constexpr std::size_t kNoMatch = kCategoryCount;

  std::size_t at(std::size_t truth, std::size_t predicted) const {
    return counts_[truth * kSize + predicted];
  }
  void add(std::size_t truth, std::size_t predicted, std::size_t n = 1) {
    counts_[truth * kSize + predicted] += n;
  }

  std::size_t row_sum(std::size_t truth) const;
  std::size_t col_sum(std::size_t predicted) const;
  std::size_t total() const;

  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::array<std::size_t, kSize * kSize> counts_{};
};

ConfusionMatrix build_confusion(const ElementMatching& m, const DocumentPage& gt,
                                const DocumentPage& pred, const CategoryMap& map);

enum class F1Averaging { Macro, Micro };

// Per-category F1 with NOMATCH mass counted as FP/FN, averaged over
// categories that occur on either side. NOMATCH is never a class of its own.
// Empty matrix scores 1.
double consistency_score(const ConfusionMatrix& c, F1Averaging averaging = F1Averaging::Macro);

}  // namespace score

#endif  // SCORE_HIERARCHY_HPP
