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

#ifndef SCORE_TEXTMETRICS_HPP
#define SCORE_TEXTMETRICS_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "score/category.hpp"
#include "score/document.hpp"
#include "score/unicode.hpp"

namespace score {

struct TokenizerConfig {
  bool case_fold = true;
  bool strip_punct = false;
  unicode::Normalization unicode_normalize = unicode::Normalization::NFC;

  friend bool operator==(const TokenizerConfig&, const TokenizerConfig&) = default;
};

// Frequency-preserving multiset of tokens. Frequencies are never zero.
class TokenBag {
 public:
  void add(std::string_view token, std::size_t count = 1);
  std::size_t count(std::string_view token) const;
  std::size_t total() const { return total_; }
  bool empty() const { return total_ == 0; }
  const std::map<std::string, std::size_t, std::less<>>& counts() const { return counts_; }

  friend bool operator==(const TokenBag&, const TokenBag&) = default;

 private:
  std::map<std::string, std::size_t, std::less<>> counts_;
  std::size_t total_ = 0;
};

// Sum over tokens of min(freq_a, freq_b).
std::size_t bag_overlap(const TokenBag& a, const TokenBag& b);
// 2 * overlap / (|a| + |b|); 1.0 when both bags are empty.
double bag_dice(const TokenBag& a, const TokenBag& b);

// Unit-cost edit distance over arbitrary comparable sequences.
template <typename T>
std::size_t edit_distance(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      const std::size_t substitute = diagonal + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({above + 1, row[j - 1] + 1, substitute});
      diagonal = above;
    }
  }
  return row[b.size()];
}

// Levenshtein distance over Unicode scalar values.
std::size_t levenshtein(std::string_view a, std::string_view b);

// 1 - clamp(levenshtein / max(|s|, |g|)); ned("", "") == 1.
double ned(std::string_view s, std::string_view g);

// Edit operations over the reference length; may exceed 1.
// Throw Error{EmptyReference} when g has no characters (words for wer).
double cer(std::string_view s, std::string_view g);
double wer(std::string_view s, std::string_view g);

TokenBag tokenize(std::string_view text, const TokenizerConfig& cfg = {});

// Share of reference tokens preserved. Empty reference: 1 iff s is empty too.
double tokens_found(const TokenBag& s_bag, const TokenBag& g_bag);
// Share of output tokens with no reference counterpart. Empty output: 0.
double tokens_added(const TokenBag& s_bag, const TokenBag& g_bag);

// Element texts in source order joined by '\n'.
std::string page_text(const DocumentPage& page);

struct ElementMatch {
  double sim = 0.0;
  std::optional<std::size_t> gt_index;
};

// Similarity of one prediction element against one ground-truth element,
// using the function for the prediction's category: token-bag Dice over
// cell contents for tables, NED of captions for figures, NED otherwise.
// Returns nullopt when the GT element is not a candidate for that kind.
std::optional<double> element_pair_similarity(const Element& pred, FunctionalCategory pred_kind,
                                              const Element& gt, FunctionalCategory gt_kind,
                                              const TokenizerConfig& cfg = {});

// Best candidate in gt_page for pred_elem (no claiming). Ties: lower index.
ElementMatch element_similarity(const Element& pred_elem, const DocumentPage& gt_page,
                                FunctionalCategory kind, const CategoryMap& map,
                                const TokenizerConfig& cfg = {});

// Token count used as the element weight w_i.
std::size_t element_weight(const Element& element, const TokenizerConfig& cfg = {});

// max(NED(page texts), sum_i w_i * Sim(e_i) / W_total) over prediction
// elements, each GT element claimed at most once (greedy, best first).
double adjusted_ned(const DocumentPage& pred, const DocumentPage& gt, const CategoryMap& map,
                    const TokenizerConfig& cfg = {});

struct FidelityScores {
  double ned = 1.0;
  double adjusted_ned = 1.0;
  double tokens_found = 1.0;
  double tokens_added = 0.0;
  std::optional<double> cer;  // unset when the reference page is empty
  std::optional<double> wer;
  // Bag totals behind tokens_found / tokens_added.
  std::size_t matched_tokens = 0;    // sum min(freq_s, freq_g)
  std::size_t missed_tokens = 0;     // sum max(0, freq_g - freq_s)
  std::size_t spurious_tokens = 0;   // sum max(0, freq_s - freq_g)
  std::size_t reference_tokens = 0;
  std::size_t output_tokens = 0;
};

FidelityScores fidelity(const DocumentPage& pred, const DocumentPage& gt, const CategoryMap& map,
                        const TokenizerConfig& cfg = {});

}  // namespace score

#endif  // SCORE_TEXTMETRICS_HPP
