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

#include "score/textmetrics.hpp"

#include <tuple>

#include "score/error.hpp"

namespace score {

void TokenBag::add(std::string_view token, std::size_t count) {
  if (count == 0) return;
  auto it = counts_.find(token);
  if (it == counts_.end()) {
    counts_.emplace(std::string(token), count);
  } else {
    it->second += count;
  }
  total_ += count;
}

std::size_t TokenBag::count(std::string_view token) const {
  const auto it = counts_.find(token);
  return it == counts_.end() ? 0 : it->second;
}

std::size_t bag_overlap(const TokenBag& a, const TokenBag& b) {
  // Merge walk over the two sorted maps.
  std::size_t overlap = 0;
  auto ia = a.counts().begin();
  auto ib = b.counts().begin();
  while (ia != a.counts().end() && ib != b.counts().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      overlap += std::min(ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
  return overlap;
}

double bag_dice(const TokenBag& a, const TokenBag& b) {
  const std::size_t denominator = a.total() + b.total();
  if (denominator == 0) return 1.0;
  return 2.0 * static_cast<double>(bag_overlap(a, b)) / static_cast<double>(denominator);
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  const std::u32string ua = unicode::decode(a);
  const std::u32string ub = unicode::decode(b);
  return edit_distance<char32_t>(ua, ub);
}

double ned(std::string_view s, std::string_view g) {
  const std::u32string us = unicode::decode(s);
  const std::u32string ug = unicode::decode(g);
  const std::size_t longest = std::max(us.size(), ug.size());
  if (longest == 0) return 1.0;
  const double ratio =
      static_cast<double>(edit_distance<char32_t>(us, ug)) / static_cast<double>(longest);
  return 1.0 - std::clamp(ratio, 0.0, 1.0);
}

double cer(std::string_view s, std::string_view g) {
  const std::u32string us = unicode::decode(s);
  const std::u32string ug = unicode::decode(g);
  if (ug.empty()) throw Error(ErrorCode::EmptyReference, "CER needs a non-empty reference");
  return static_cast<double>(edit_distance<char32_t>(us, ug)) / static_cast<double>(ug.size());
}

double wer(std::string_view s, std::string_view g) {
  const auto ws = unicode::split_whitespace(s);
  const auto wg = unicode::split_whitespace(g);
  if (wg.empty()) throw Error(ErrorCode::EmptyReference, "WER needs a non-empty reference");
  return static_cast<double>(edit_distance<std::string>(ws, wg)) / static_cast<double>(wg.size());
}

TokenBag tokenize(std::string_view text, const TokenizerConfig& cfg) {
  std::string prepared = unicode::normalize(text, cfg.unicode_normalize);
  if (cfg.case_fold) prepared = unicode::case_fold(prepared);
  TokenBag bag;
  for (auto& token : unicode::split_whitespace(prepared)) {
    if (cfg.strip_punct) {
      token = unicode::strip_punct(token);
      if (token.empty()) continue;
    }
    bag.add(token);
  }
  return bag;
}

double tokens_found(const TokenBag& s_bag, const TokenBag& g_bag) {
  if (g_bag.empty()) return s_bag.empty() ? 1.0 : 0.0;
  return static_cast<double>(bag_overlap(s_bag, g_bag)) / static_cast<double>(g_bag.total());
}

double tokens_added(const TokenBag& s_bag, const TokenBag& g_bag) {
  if (s_bag.empty()) return 0.0;
  const std::size_t spurious = s_bag.total() - bag_overlap(s_bag, g_bag);
  return static_cast<double>(spurious) / static_cast<double>(s_bag.total());
}

std::string page_text(const DocumentPage& page) {
  std::string out;
  for (std::size_t i = 0; i < page.elements.size(); ++i) {
    if (i > 0) out += '\n';
    out += page.elements[i].text;
  }
  return out;
}

namespace {

enum class SimilarityKind { Paragraph, Table, Figure };

SimilarityKind kind_of(FunctionalCategory c) {
  switch (c) {
    case FunctionalCategory::Table: return SimilarityKind::Table;
    case FunctionalCategory::Figure: return SimilarityKind::Figure;
    default: return SimilarityKind::Paragraph;
  }
}

const std::string& cell_text_or_text(const Element& e, std::string& scratch) {
  if (!e.table) return e.text;
  scratch = e.table->text();
  return scratch;
}

TokenBag content_bag(const Element& e, const TokenizerConfig& cfg) {
  std::string scratch;
  return tokenize(cell_text_or_text(e, scratch), cfg);
}

}  // namespace

std::optional<double> element_pair_similarity(const Element& pred, FunctionalCategory pred_kind,
                                              const Element& gt, FunctionalCategory gt_kind,
                                              const TokenizerConfig& cfg) {
  switch (kind_of(pred_kind)) {
    case SimilarityKind::Table:
      if (gt_kind != FunctionalCategory::Table) return std::nullopt;
      return bag_dice(content_bag(pred, cfg), content_bag(gt, cfg));
    case SimilarityKind::Figure:
      if (gt_kind != FunctionalCategory::Figure && gt_kind != FunctionalCategory::Caption) {
        return std::nullopt;
      }
      return ned(pred.text, gt.text);
    case SimilarityKind::Paragraph:
      return ned(pred.text, gt.text);
  }
  return std::nullopt;
}

ElementMatch element_similarity(const Element& pred_elem, const DocumentPage& gt_page,
                                FunctionalCategory kind, const CategoryMap& map,
                                const TokenizerConfig& cfg) {
  ElementMatch best;
  for (std::size_t j = 0; j < gt_page.elements.size(); ++j) {
    const Element& gt = gt_page.elements[j];
    const auto sim = element_pair_similarity(pred_elem, kind, gt, map.lookup(gt.raw_label), cfg);
    if (sim && (!best.gt_index || *sim > best.sim)) {
      best.sim = *sim;
      best.gt_index = j;
    }
  }
  return best;
}

std::size_t element_weight(const Element& element, const TokenizerConfig& cfg) {
  return content_bag(element, cfg).total();
}

namespace {

// W_total is taken over prediction elements, the same side the weights w_i
// index. Switching to the reference side only touches this function.
double total_weight(std::span<const std::size_t> pred_weights) {
  return static_cast<double>(std::accumulate(pred_weights.begin(), pred_weights.end(),
                                             std::size_t{0}));
}

// sum_i w_i * Sim(e_i) / W_total, or nullopt for a weightless prediction.
std::optional<double> weighted_similarity(const DocumentPage& pred, const DocumentPage& gt,
                                          const CategoryMap& map, const TokenizerConfig& cfg) {
  std::vector<std::size_t> weights;
  weights.reserve(pred.elements.size());
  for (const auto& e : pred.elements) weights.push_back(element_weight(e, cfg));
  const double w_total = total_weight(weights);
  if (w_total <= 0.0) return std::nullopt;

  struct Candidate {
    double sim;
    std::size_t gt;
    std::size_t pred;
  };
  std::vector<Candidate> candidates;
  std::vector<FunctionalCategory> gt_kinds;
  gt_kinds.reserve(gt.elements.size());
  for (const auto& g : gt.elements) gt_kinds.push_back(map.lookup(g.raw_label));

  for (std::size_t i = 0; i < pred.elements.size(); ++i) {
    if (weights[i] == 0) continue;
    const FunctionalCategory kind = map.lookup(pred.elements[i].raw_label);
    for (std::size_t j = 0; j < gt.elements.size(); ++j) {
      const auto sim = element_pair_similarity(pred.elements[i], kind, gt.elements[j],
                                               gt_kinds[j], cfg);
      if (sim && *sim > 0.0) candidates.push_back({*sim, j, i});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.sim != b.sim) return a.sim > b.sim;
    return std::tie(a.gt, a.pred) < std::tie(b.gt, b.pred);
  });

  std::vector<bool> gt_claimed(gt.elements.size(), false);
  std::vector<bool> pred_done(pred.elements.size(), false);
  double weighted = 0.0;
  for (const Candidate& c : candidates) {
    if (gt_claimed[c.gt] || pred_done[c.pred]) continue;
    gt_claimed[c.gt] = true;
    pred_done[c.pred] = true;
    weighted += static_cast<double>(weights[c.pred]) * c.sim;
  }
  return std::clamp(weighted / w_total, 0.0, 1.0);
}

}  // namespace

double adjusted_ned(const DocumentPage& pred, const DocumentPage& gt, const CategoryMap& map,
                    const TokenizerConfig& cfg) {
  const double raw = ned(page_text(pred), page_text(gt));
  return std::max(raw, weighted_similarity(pred, gt, map, cfg).value_or(0.0));
}

FidelityScores fidelity(const DocumentPage& pred, const DocumentPage& gt, const CategoryMap& map,
                        const TokenizerConfig& cfg) {
  const std::string s = page_text(pred);
  const std::string g = page_text(gt);
  FidelityScores out;
  out.ned = ned(s, g);
  out.adjusted_ned = std::max(out.ned, weighted_similarity(pred, gt, map, cfg).value_or(0.0));

  const TokenBag s_bag = tokenize(s, cfg);
  const TokenBag g_bag = tokenize(g, cfg);
  out.tokens_found = tokens_found(s_bag, g_bag);
  out.tokens_added = tokens_added(s_bag, g_bag);
  out.matched_tokens = bag_overlap(s_bag, g_bag);
  out.missed_tokens = g_bag.total() - out.matched_tokens;
  out.spurious_tokens = s_bag.total() - out.matched_tokens;
  out.reference_tokens = g_bag.total();
  out.output_tokens = s_bag.total();

  if (!unicode::split_whitespace(g).empty()) {
    out.cer = cer(s, g);
    out.wer = wer(s, g);
  }
  return out;
}

}  // namespace score
