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

#ifndef SCORE_TABLEEVAL_HPP
#define SCORE_TABLEEVAL_HPP

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "score/table.hpp"
#include "score/textmetrics.hpp"
#include "score/tree_edit.hpp"

namespace score {

// Dice overlap of the cell-content token bags; 1.0 for two empty tables.
double table_similarity(const NormalizedTable& p, const NormalizedTable& g,
                        const TokenizerConfig& cfg = {});

struct TablePair {
  std::size_t pred = 0;
  std::size_t gt = 0;
  double similarity = 0.0;

  friend bool operator==(const TablePair&, const TablePair&) = default;
};

struct DetectionResult {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f_beta = 1.0;
  std::vector<TablePair> pairs;  // sorted by gt index
};

// F-measure; 0 when precision and recall are both 0.
double f_measure(double precision, double recall, double beta);

// Fills precision/recall/f_beta from the counts. An empty side gives a
// vacuous 1 for its ratio; no tables on either side gives F = 1.
void finalize_detection(DetectionResult& result, double beta);

// One-to-one matching of predicted to ground-truth tables by content. Pairs
// below tau are never matched; among the rest the assignment maximizing
// total similarity is chosen (ties toward more pairs).
// Throws Error{InvalidThreshold} unless 0 < tau <= 1 and beta > 0.
DetectionResult match_tables(std::span<const NormalizedTable> preds,
                             std::span<const NormalizedTable> gts, double tau = 0.5,
                             double beta = 1.0, const TokenizerConfig& cfg = {});

enum class Axis { Row, Col };

// One string per row (or column) index, cells joined by single spaces in
// cross-axis order. Spanned cells appear only at their anchor index.
std::vector<std::string> flatten(const NormalizedTable& t, Axis axis);

struct Shift {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const Shift&, const Shift&) = default;
};

struct AlignmentScore {
  double content = 0.0;
  double index = 0.0;
};

// Compares p against g with g's anchors translated by `shift`.
// content: per axis, the length-weighted mean NED between flattened pred and
// shifted-GT strings; the better-aligned axis is reported.
// index: share of GT cells whose shifted anchor is covered in p by a cell
// whose content reaches index_gate NED.
AlignmentScore cell_alignment(const NormalizedTable& p, const NormalizedTable& g, Shift shift,
                              double index_gate = 0.5);

struct CellAccuracy {
  double content_acc = 0.0;
  double index_acc = 0.0;
  Shift best_shift;
};

// Maximizes content + index jointly over shifts in [-n, n]^2. Ties go to the
// smaller |row| + |col|, then the lexicographically smaller shift.
CellAccuracy content_index_accuracy(const NormalizedTable& p, const NormalizedTable& g, int n,
                                    double index_gate = 0.5);

struct TableNodeLabel {
  enum class Kind { Table, Row, Cell };
  Kind kind = Kind::Table;
  std::string content;
  int rowspan = 1;
  int colspan = 1;

  friend bool operator==(const TableNodeLabel&, const TableNodeLabel&) = default;
};

using TableTree = OrderedTree<TableNodeLabel>;

// table -> one tr per row index -> one td leaf per anchored cell.
TableTree build_table_tree(const NormalizedTable& t);

// 0 for equal structural labels, 1 - NED(content) for td pairs with equal
// spans, 1 otherwise.
double teds_rename_cost(const TableNodeLabel& a, const TableNodeLabel& b);

double teds(const TableTree& a, const TableTree& b);

}  // namespace score

#endif  // SCORE_TABLEEVAL_HPP
