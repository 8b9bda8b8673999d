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

#include "score/hierarchy.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <tuple>

#include "score/error.hpp"
#include "score/textmetrics.hpp"
#include "score/unicode.hpp"

namespace score {

ElementMatching match_elements(const DocumentPage& gt, const DocumentPage& pred,
                               double sim_threshold) {
  if (!(sim_threshold >= 0.0 && sim_threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidThreshold, "element similarity threshold must lie in [0, 1]");
  }
  struct Candidate {
    double score;
    int order_gap;
    int gt_order;
    int pred_order;
    std::size_t gt;
    std::size_t pred;
  };

  std::vector<std::size_t> gt_len;
  std::vector<std::size_t> pred_len;
  for (const auto& e : gt.elements) gt_len.push_back(unicode::length(e.text));
  for (const auto& e : pred.elements) pred_len.push_back(unicode::length(e.text));

  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < gt.elements.size(); ++i) {
    for (std::size_t j = 0; j < pred.elements.size(); ++j) {
      // NED can never exceed shorter/longer; skip pairs that cannot qualify.
      const std::size_t longest = std::max(gt_len[i], pred_len[j]);
      if (longest > 0 &&
          static_cast<double>(std::min(gt_len[i], pred_len[j])) / longest < sim_threshold) {
        continue;
      }
      const double score = ned(gt.elements[i].text, pred.elements[j].text);
      if (score < sim_threshold) continue;
      const int gt_order = gt.elements[i].source_order;
      const int pred_order = pred.elements[j].source_order;
      candidates.push_back({score, std::abs(gt_order - pred_order), gt_order, pred_order, i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return std::tie(a.order_gap, a.gt_order, a.pred_order) <
           std::tie(b.order_gap, b.gt_order, b.pred_order);
  });

  std::vector<bool> gt_used(gt.elements.size(), false);
  std::vector<bool> pred_used(pred.elements.size(), false);
  ElementMatching matching;
  for (const Candidate& c : candidates) {
    if (gt_used[c.gt] || pred_used[c.pred]) continue;
    gt_used[c.gt] = true;
    pred_used[c.pred] = true;
    matching.push_back({c.gt, c.pred, c.score});
  }
  std::sort(matching.begin(), matching.end(), [&](const ElementPair& a, const ElementPair& b) {
    return gt.elements[a.gt].source_order < gt.elements[b.gt].source_order;
  });
  return matching;
}

std::size_t ConfusionMatrix::row_sum(std::size_t truth) const {
  std::size_t sum = 0;
  for (std::size_t j = 0; j < kSize; ++j) sum += at(truth, j);
  return sum;
}

std::size_t ConfusionMatrix::col_sum(std::size_t predicted) const {
  std::size_t sum = 0;
  for (std::size_t i = 0; i < kSize; ++i) sum += at(i, predicted);
  return sum;
}

std::size_t ConfusionMatrix::total() const {
  std::size_t sum = 0;
  for (std::size_t v : counts_) sum += v;
  return sum;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += other.counts_[k];
  return *this;
}

ConfusionMatrix build_confusion(const ElementMatching& m, const DocumentPage& gt,
                                const DocumentPage& pred, const CategoryMap& map) {
  std::vector<bool> gt_matched(gt.elements.size(), false);
  std::vector<bool> pred_matched(pred.elements.size(), false);
  ConfusionMatrix c;
  for (const ElementPair& pair : m) {
    if (pair.gt >= gt.elements.size() || pair.pred >= pred.elements.size() ||
        gt_matched[pair.gt] || pred_matched[pair.pred]) {
      throw std::invalid_argument("build_confusion: matching is not one-to-one over the pages");
    }
    gt_matched[pair.gt] = true;
    pred_matched[pair.pred] = true;
    c.add(index_of(map.lookup(gt.elements[pair.gt].raw_label)),
          index_of(map.lookup(pred.elements[pair.pred].raw_label)));
  }
  for (std::size_t i = 0; i < gt.elements.size(); ++i) {
    if (!gt_matched[i]) {
      c.add(index_of(map.lookup(gt.elements[i].raw_label)), ConfusionMatrix::kNoMatch);
    }
  }
  for (std::size_t j = 0; j < pred.elements.size(); ++j) {
    if (!pred_matched[j]) {
      c.add(ConfusionMatrix::kNoMatch, index_of(map.lookup(pred.elements[j].raw_label)));
    }
  }
  return c;
}

double consistency_score(const ConfusionMatrix& c, F1Averaging averaging) {
  double f1_sum = 0.0;
  std::size_t classes = 0;
  std::size_t tp_all = 0;
  std::size_t fp_all = 0;
  std::size_t fn_all = 0;
  for (std::size_t k = 0; k < kCategoryCount; ++k) {
    const std::size_t row = c.row_sum(k);
    const std::size_t col = c.col_sum(k);
    if (row == 0 && col == 0) continue;
    const std::size_t tp = c.at(k, k);
    const std::size_t fp = col - tp;
    const std::size_t fn = row - tp;
    f1_sum += 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
    ++classes;
    tp_all += tp;
    fp_all += fp;
    fn_all += fn;
  }
  if (classes == 0) return 1.0;
  if (averaging == F1Averaging::Micro) {
    return 2.0 * static_cast<double>(tp_all) / static_cast<double>(2 * tp_all + fp_all + fn_all);
  }
  return f1_sum / static_cast<double>(classes);
}

}  // namespace score
