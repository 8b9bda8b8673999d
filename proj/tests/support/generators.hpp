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

// Random inputs and serializers shared by the property and acceptance tests.

#ifndef SCORE_TESTS_GENERATORS_HPP
#define SCORE_TESTS_GENERATORS_HPP

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "score/document.hpp"
#include "score/table.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> words = {
      "Q1",     "Q2",     "$100K", "$200K",  "revenue", "total", "net",    "margin",
      "growth", "region", "north", "south",  "café",    "naïve", "Straße", "2024",
      "(est.)", "—",      "a",     "the",    "of",      "and",   "units",  "cost",
      "price",  "item",   "%",     "report", "Σ",       "数据",  "table",  "note"};
  return words;
}

inline std::string random_words(Rng& rng, int lo, int hi) {
  const auto& v = vocabulary();
  const int n = uniform(rng, lo, hi);
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (i > 0) out += ' ';
    out += v[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1))];
  }
  return out;
}

// Dense table of single cells; contents never empty.
inline score::NormalizedTable random_grid(Rng& rng, int max_rows, int max_cols) {
  const int rows = uniform(rng, 1, max_rows);
  const int cols = uniform(rng, 1, max_cols);
  std::vector<score::TableCell> cells;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) cells.push_back({r, c, 1, 1, random_words(rng, 1, 3)});
  }
  return score::NormalizedTable(std::move(cells));
}

// Table with random spans, built by greedy placement on a free grid.
inline score::NormalizedTable random_spanned(Rng& rng, int max_rows, int max_cols) {
  const int rows = uniform(rng, 1, max_rows);
  const int cols = uniform(rng, 1, max_cols);
  std::vector<char> used(static_cast<std::size_t>(rows * cols), 0);
  std::vector<score::TableCell> cells;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (used[static_cast<std::size_t>(r * cols + c)]) continue;
      int rs = coin(rng, 0.2) ? uniform(rng, 1, rows - r) : 1;
      int cs = coin(rng, 0.2) ? uniform(rng, 1, cols - c) : 1;
      // Shrink the column span until the row strip is free.
      for (int k = 1; k < cs; ++k) {
        if (used[static_cast<std::size_t>(r * cols + c + k)]) {
          cs = k;
          break;
        }
      }
      // Then the row span until the whole rectangle is free.
      for (int i = 1; i < rs; ++i) {
        bool free = true;
        for (int k = 0; k < cs; ++k) free = free && !used[static_cast<std::size_t>((r + i) * cols + c + k)];
        if (!free) {
          rs = i;
          break;
        }
      }
      for (int i = 0; i < rs; ++i) {
        for (int k = 0; k < cs; ++k) used[static_cast<std::size_t>((r + i) * cols + c + k)] = 1;
      }
      cells.push_back({r, c, rs, cs, coin(rng, 0.1) ? "" : random_words(rng, 1, 3)});
    }
  }
  return score::NormalizedTable(std::move(cells));
}

inline std::string html_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

// Compact HTML for a span-free dense table.
inline std::string to_html(const score::NormalizedTable& t, bool header_row = false) {
  std::string out = "<table>";
  int row = -1;
  for (const auto& c : t.cells()) {
    if (c.row != row) {
      if (row >= 0) out += "</tr>";
      out += "<tr>";
      row = c.row;
    }
    const char* tag = header_row && c.row == 0 ? "th" : "td";
    out += std::string("<") + tag;
    if (c.rowspan > 1) out += " rowspan=\"" + std::to_string(c.rowspan) + "\"";
    if (c.colspan > 1) out += " colspan=\"" + std::to_string(c.colspan) + "\"";
    out += ">" + html_escape(c.content) + "</" + tag + ">";
  }
  if (row >= 0) out += "</tr>";
  out += "</table>";
  return out;
}

inline nlohmann::json to_rowcol(const score::NormalizedTable& t) {
  auto cells = nlohmann::json::array();
  for (const auto& c : t.cells()) {
    nlohmann::json j = {{"row", c.row}, {"col", c.col}, {"content", c.content}};
    if (c.rowspan > 1) j["rowspan"] = c.rowspan;
    if (c.colspan > 1) j["colspan"] = c.colspan;
    cells.push_back(std::move(j));
  }
  return cells;
}

inline nlohmann::json to_coords(const score::NormalizedTable& t) {
  auto cells = nlohmann::json::array();
  for (const auto& c : t.cells()) {
    cells.push_back(
        {{"x", c.col}, {"y", c.row}, {"w", c.colspan}, {"h", c.rowspan}, {"content", c.content}});
  }
  return cells;
}

inline const std::vector<std::string>& labels() {
  static const std::vector<std::string> l = {"Title",   "Text",    "Text",     "Paragraph",
                                             "Table",   "Figure",  "Caption",  "List",
                                             "Header",  "Footer",  "Formula",  "Sidebar"};
  return l;
}

inline nlohmann::json random_element(Rng& rng) {
  const auto& l = labels();
  const std::string label =
      l[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(l.size()) - 1))];
  if (label == "Table") {
    const auto t = random_spanned(rng, 4, 4);
    switch (uniform(rng, 0, 2)) {
      case 0: return {{"type", label}, {"text", to_html(t)}};
      case 1: return {{"type", label}, {"text", to_rowcol(t)}};
      default: return {{"type", label}, {"text", to_coords(t)}};
    }
  }
  return {{"type", label}, {"text", coin(rng, 0.05) ? "" : random_words(rng, 1, 12)}};
}

// Ground-truth page plus a prediction derived by dropping, relabelling,
// perturbing, reordering and inserting elements.
inline std::pair<nlohmann::json, nlohmann::json> random_page_pair(Rng& rng) {
  auto gt = nlohmann::json::array();
  const int n = uniform(rng, 0, 8);
  for (int i = 0; i < n; ++i) gt.push_back(random_element(rng));
  auto pred = nlohmann::json::array();
  for (const auto& e : gt) {
    if (coin(rng, 0.15)) continue;
    nlohmann::json copy = e;
    if (coin(rng, 0.15)) {
      const auto& l = labels();
      copy["type"] = l[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(l.size()) - 1))];
    }
    if (copy["text"].is_string() && coin(rng, 0.3)) {
      copy["text"] = copy["text"].get<std::string>() + " " + random_words(rng, 1, 3);
    }
    pred.push_back(std::move(copy));
  }
  if (pred.size() > 1 && coin(rng, 0.4)) {
    const auto a = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pred.size()) - 1));
    const auto b = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pred.size()) - 1));
    std::swap(pred[a], pred[b]);
  }
  if (coin(rng, 0.3)) pred.push_back(random_element(rng));
  return {gt, pred};
}

}  // namespace gen

#endif  // SCORE_TESTS_GENERATORS_HPP
