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

#ifndef SCORE_DOCUMENT_HPP
#define SCORE_DOCUMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "score/table.hpp"

namespace score {

// One parsed unit of a page as produced by some parsing system.
struct Element {
  std::string raw_label;
  std::string text;
  std::optional<NormalizedTable> table;
  int source_order = 0;
};

struct DocumentPage {
  std::string page_id;
  std::vector<Element> elements;  // ordered by source_order, contiguous from 0
  // Degraded element-level parses (bad table payloads and the like).
  std::vector<std::string> notices;
};

struct CoordCell {
  int x = 0;
  int y = 0;
  int w = 1;
  int h = 1;
  std::string content;
};

struct PagePair {
  std::string page_id;
  DocumentPage gt;
  DocumentPage pred;
  std::vector<std::string> notices;
};

}  // namespace score

#endif  // SCORE_DOCUMENT_HPP
