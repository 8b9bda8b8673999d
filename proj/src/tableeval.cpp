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

#include "score/tableeval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <tuple>

#include "score/assignment.hpp"
#include "score/error.hpp"

namespace score {
namespace {

// Added to every eligible pair so equal-similarity assignments prefer more
// matched pairs; far below any similarity difference that matters.
constexpr double kPairBonus = 1e-9;

}  // namespace

double table_similarity(const NormalizedTable& p, const NormalizedTable& g,
                        const TokenizerConfig& cfg) {
  return bag_dice(tokenize(p.text(), cfg), tokenize(g.text(), cfg));
}

double f_measure(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  const double denominator = b2 * precision + recall;
  if (denominator <= 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / denominator;
}

void finalize_detection(DetectionResult& r, double beta) {
  const std::size_t predicted = r.true_positives + r.false_positives;
  const std::size_t expected = r.true_positives + r.false_negatives;
  r.precision = predicted == 0 ? 1.0 : static_cast<double>(r.true_positives) / predicted;
  r.recall = expected == 0 ? 1.0 : static_cast<double>(r.true_positives) / expected;
  r.f_beta = (predicted == 0 && expected == 0) ? 1.0 : f_measure(r.precision, r.recall, beta);
}

DetectionResult match_tables(std::span<const NormalizedTable> preds,
                             std::span<const NormalizedTable> gts, double tau, double beta,
                             const TokenizerConfig& cfg) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw Error(ErrorCode::InvalidThreshold, "detection tau must lie in (0, 1]");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::InvalidThreshold, "detection beta must be positive");
  }

  std::vector<TokenBag> pred_bags;
  std::vector<TokenBag> gt_bags;
  for (const auto& t : preds) pred_bags.push_back(tokenize(t.text(), cfg));
  for (const auto& t : gts) gt_bags.push_back(tokenize(t.text(), cfg));

  const std::size_t rows = preds.size();
  const std::size_t cols = gts.size();
  std::vector<double> similarity(rows * cols, 0.0);
  std::vector<double> weight(rows * cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double sim = bag_dice(pred_bags[i], gt_bags[j]);
      similarity[i * cols + j] = sim;
      if (sim >= tau) weight[i * cols + j] = sim + kPairBonus;
    }
  }

  DetectionResult result;
  const std::vector<int> assignment = max_weight_assignment(weight, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const int j = assignment[i];
    if (j < 0 || weight[i * cols + static_cast<std::size_t>(j)] <= 0.0) continue;
    result.pairs.push_back({i, static_cast<std::size_t>(j), similarity[i * cols + j]});
  }
  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const TablePair& a, const TablePair& b) { return a.gt < b.gt; });
  result.true_positives = result.pairs.size();
  result.false_positives = rows - result.true_positives;
  result.false_negatives = cols - result.true_positives;
  finalize_detection(result, beta);
  return result;
}

std::vector<std::string> flatten(const NormalizedTable& t, Axis axis) {
  std::vector<std::string> lines(static_cast<std::size_t>(axis == Axis::Row ? t.n_rows()
                                                                            : t.n_cols()));
  std::vector<const TableCell*> ordered;
  ordered.reserve(t.cells().size());
  for (const auto& c : t.cells()) ordered.push_back(&c);
  if (axis == Axis::Col) {
    std::stable_sort(ordered.begin(), ordered.end(), [](const TableCell* a, const TableCell* b) {
      return std::tie(a->col, a->row) < std::tie(b->col, b->row);
    });
  }
  for (const TableCell* c : ordered) {
    if (c->content.empty()) continue;
    std::string& line = lines[static_cast<std::size_t>(axis == Axis::Row ? c->row : c->col)];
    if (!line.empty()) line += ' ';
    line += c->content;
  }
  return lines;
}

namespace {

// Length-weighted NED between pred lines and GT lines displaced by offset.
double axis_score(const std::vector<std::u32string>& pred, const std::vector<std::u32string>& gt,
                  int offset) {
  const int n_pred = static_cast<int>(pred.size());
  const int n_gt = static_cast<int>(gt.size());
  const int lo = std::min(0, offset);
  const int hi = std::max(n_pred, n_gt + offset);
  static const std::u32string kEmpty;
  double weighted = 0.0;
  double total = 0.0;
  for (int k = lo; k < hi; ++k) {
    const std::u32string& ps = (k >= 0 && k < n_pred) ? pred[static_cast<std::size_t>(k)] : kEmpty;
    const int g = k - offset;
    const std::u32string& gs = (g >= 0 && g < n_gt) ? gt[static_cast<std::size_t>(g)] : kEmpty;
    const std::size_t longest = std::max(ps.size(), gs.size());
    if (longest == 0) continue;
    const double distance = static_cast<double>(edit_distance<char32_t>(ps, gs));
    weighted += static_cast<double>(longest) - std::min(distance, static_cast<double>(longest));
    total += static_cast<double>(longest);
  }
  return total == 0.0 ? 1.0 : weighted / total;
}

std::vector<std::u32string> decoded_lines(const NormalizedTable& t, Axis axis) {
  std::vector<std::u32string> out;
  for (const auto& line : flatten(t, axis)) out.push_back(unicode::decode(line));
  return out;
}

double index_score(const NormalizedTable& p, const NormalizedTable& g, Shift shift, double gate) {
  if (g.empty()) return p.empty() ? 1.0 : 0.0;
  std::size_t hits = 0;
  for (const auto& cell : g.cells()) {
    const TableCell* hit = p.covering(cell.row + shift.row, cell.col + shift.col);
    if (hit != nullptr && ned(hit->content, cell.content) >= gate) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(g.cells().size());
}

}  // namespace

AlignmentScore cell_alignment(const NormalizedTable& p, const NormalizedTable& g, Shift shift,
                              double index_gate) {
  const double rows = axis_score(decoded_lines(p, Axis::Row), decoded_lines(g, Axis::Row),
                                 shift.row);
  const double cols = axis_score(decoded_lines(p, Axis::Col), decoded_lines(g, Axis::Col),
                                 shift.col);
  return {std::max(rows, cols), index_score(p, g, shift, index_gate)};
}

CellAccuracy content_index_accuracy(const NormalizedTable& p, const NormalizedTable& g, int n,
                                    double index_gate) {
  n = std::max(n, 0);
  // Row-axis content only depends on the row shift and column-axis content
  // only on the column shift, so each is computed once per offset.
  const auto p_rows = decoded_lines(p, Axis::Row);
  const auto g_rows = decoded_lines(g, Axis::Row);
  const auto p_cols = decoded_lines(p, Axis::Col);
  const auto g_cols = decoded_lines(g, Axis::Col);
  std::vector<double> row_scores;
  std::vector<double> col_scores;
  for (int d = -n; d <= n; ++d) {
    row_scores.push_back(axis_score(p_rows, g_rows, d));
    col_scores.push_back(axis_score(p_cols, g_cols, d));
  }

  std::vector<Shift> shifts;
  for (int dr = -n; dr <= n; ++dr) {
    for (int dc = -n; dc <= n; ++dc) shifts.push_back({dr, dc});
  }
  std::stable_sort(shifts.begin(), shifts.end(), [](Shift a, Shift b) {
    return std::abs(a.row) + std::abs(a.col) < std::abs(b.row) + std::abs(b.col);
  });

  CellAccuracy best;
  double best_objective = -1.0;
  for (const Shift s : shifts) {
    const double content = std::max(row_scores[static_cast<std::size_t>(s.row + n)],
                                    col_scores[static_cast<std::size_t>(s.col + n)]);
    const double index = index_score(p, g, s, index_gate);
    if (content + index > best_objective) {
      best_objective = content + index;
      best = {content, index, s};
    }
  }
  return best;
}

TableTree build_table_tree(const NormalizedTable& t) {
  TableTree root{{TableNodeLabel::Kind::Table, {}, 1, 1}, {}};
  root.children.resize(static_cast<std::size_t>(t.n_rows()),
                       TableTree{{TableNodeLabel::Kind::Row, {}, 1, 1}, {}});
  for (const auto& c : t.cells()) {
    root.children[static_cast<std::size_t>(c.row)].children.push_back(
        TableTree{{TableNodeLabel::Kind::Cell, c.content, c.rowspan, c.colspan}, {}});
  }
  return root;
}

double teds_rename_cost(const TableNodeLabel& a, const TableNodeLabel& b) {
  if (a.kind != b.kind) return 1.0;
  if (a.kind != TableNodeLabel::Kind::Cell) return 0.0;
  if (a.rowspan != b.rowspan || a.colspan != b.colspan) return 1.0;
  return 1.0 - ned(a.content, b.content);
}

double teds(const TableTree& a, const TableTree& b) {
  const double distance = tree_edit_distance(a, b, teds_rename_cost);
  const double largest = static_cast<double>(std::max(a.size(), b.size()));
  return 1.0 - std::clamp(distance / largest, 0.0, 1.0);
}

}  // namespace score
