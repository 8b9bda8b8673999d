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

#ifndef SCORE_INGEST_HPP
#define SCORE_INGEST_HPP

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "score/document.hpp"
#include "score/table.hpp"

namespace score {

enum class FormatHint {
  // String texts containing a <table> are parsed as HTML tables.
  Auto,
  // String texts are taken literally; only cell lists carry tables.
  ElementsJson,
};

// Parses an element file: a JSON list of {"type", "text"} objects (a single
// bare object is accepted as a one-element page). "text" is a string, an HTML
// table string, or a list of coordinate or row/col cells.
// Throws Error{MalformedInput} naming the offending element index.
DocumentPage parse_document(std::string_view bytes, FormatHint hint = FormatHint::Auto,
                            std::string page_id = {});

// Lenient, browser-style parse of exactly one top-level <table>.
// Throws NoTableFound, MultipleTables or MalformedInput.
NormalizedTable parse_table_html(std::string_view html);

// Character data of an HTML fragment as emitted: tags dropped, entities
// decoded, whitespace kept, image alt text included. A single space is
// inserted at block and cell boundaries that would otherwise join two words.
std::string html_text(std::string_view html);

NormalizedTable normalize_coord_cells(std::span<const CoordCell> cells);

// JSON list of {"row", "col", "content", ["rowspan"], ["colspan"]}.
NormalizedTable parse_table_rowcol(std::string_view json);

struct PairingResult {
  std::vector<PagePair> pairs;
  // One line per unmatched stem or page dropped for an unparsable file.
  std::vector<std::string> notices;
};

// Pairs <stem>.json files by stem in lexicographic order. A prediction that
// fails to parse is evaluated as an empty page with a notice; a ground truth
// that fails to parse drops the page with a notice.
// Throws Error{EmptyDataset} when no pair survives.
PairingResult pair_pages(const std::filesystem::path& gt_dir,
                         const std::filesystem::path& pred_dir,
                         FormatHint hint = FormatHint::Auto);

}  // namespace score

#endif  // SCORE_INGEST_HPP
