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

#include "score/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "score/error.hpp"
#include "score/unicode.hpp"

namespace score {
namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& message) {
  throw Error(ErrorCode::MalformedInput, message);
}

int integer_field(const json& obj, const char* key, std::optional<int> fallback,
                  const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    if (fallback) return *fallback;
    malformed(fmt::format("{}: missing integer \"{}\"", where, key));
  }
  if (!it->is_number_integer()) malformed(fmt::format("{}: \"{}\" must be an integer", where, key));
  const auto value = it->get<long long>();
  if (value < 0 || value > 1'000'000) {
    malformed(fmt::format("{}: \"{}\" = {} is out of range", where, key, value));
  }
  return static_cast<int>(value);
}

std::string content_field(const json& obj, const std::string& where) {
  const auto it = obj.find("content");
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) malformed(where + ": \"content\" must be a string");
  return it->get<std::string>();
}

std::vector<CoordCell> coord_cells_from_json(const json& list, const std::string& where) {
  std::vector<CoordCell> cells;
  cells.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& item = list[i];
    const std::string at = fmt::format("{} cell {}", where, i);
    if (!item.is_object()) malformed(at + ": expected an object");
    cells.push_back(CoordCell{integer_field(item, "x", std::nullopt, at),
                              integer_field(item, "y", std::nullopt, at),
                              integer_field(item, "w", 1, at), integer_field(item, "h", 1, at),
                              content_field(item, at)});
  }
  return cells;
}

NormalizedTable rowcol_from_json(const json& list, const std::string& where) {
  if (!list.is_array()) malformed(where + ": expected a list of cells");
  std::vector<TableCell> cells;
  cells.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& item = list[i];
    const std::string at = fmt::format("{} cell {}", where, i);
    if (!item.is_object()) malformed(at + ": expected an object");
    cells.push_back(TableCell{integer_field(item, "row", std::nullopt, at),
                              integer_field(item, "col", std::nullopt, at),
                              integer_field(item, "rowspan", 1, at),
                              integer_field(item, "colspan", 1, at),
                              unicode::collapse_whitespace(content_field(item, at))});
  }
  return NormalizedTable(std::move(cells));
}

bool looks_like_html_table(std::string_view text) {
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; });
  return lowered.find("<table") != std::string::npos;
}

json parse_json(std::string_view bytes, const std::string& what) {
  if (!unicode::is_valid_utf8(bytes)) malformed(what + " is not valid UTF-8");
  try {
    return json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    malformed(what + " is not valid JSON: " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::map<std::string, std::filesystem::path> json_files_by_stem(const std::filesystem::path& dir,
                                                                std::string_view role) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::InvalidConfig,
                fmt::format("{} directory '{}' does not exist", role, dir.string()));
  }
  std::map<std::string, std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    files.emplace(entry.path().stem().string(), entry.path());
  }
  return files;
}

}  // namespace

NormalizedTable normalize_coord_cells(std::span<const CoordCell> cells) {
  std::vector<TableCell> tuples;
  tuples.reserve(cells.size());
  for (const auto& c : cells) {
    tuples.push_back(TableCell{c.y, c.x, c.h, c.w, unicode::collapse_whitespace(c.content)});
  }
  return NormalizedTable(std::move(tuples));
}

NormalizedTable parse_table_rowcol(std::string_view bytes) {
  return rowcol_from_json(parse_json(bytes, "row/col table"), "row/col table");
}

DocumentPage parse_document(std::string_view bytes, FormatHint hint, std::string page_id) {
  json root = parse_json(bytes, "element file");
  if (root.is_object()) root = json::array({std::move(root)});
  if (!root.is_array()) malformed("element file must be a list of element objects");

  DocumentPage page;
  page.page_id = std::move(page_id);
  page.elements.reserve(root.size());
  for (std::size_t i = 0; i < root.size(); ++i) {
    const json& obj = root[i];
    const std::string where = fmt::format("element {}", i);
    if (!obj.is_object()) malformed(where + ": expected an object");
    const auto type = obj.find("type");
    if (type == obj.end() || !type->is_string()) malformed(where + ": missing string \"type\"");

    Element element;
    element.raw_label = type->get<std::string>();
    element.source_order = static_cast<int>(i);

    const auto text = obj.find("text");
    if (text == obj.end() || text->is_null()) {
      // empty element
    } else if (text->is_string()) {
      element.text = text->get<std::string>();
      if (hint == FormatHint::Auto && looks_like_html_table(element.text)) {
        try {
          NormalizedTable parsed = parse_table_html(element.text);
          if (parsed.empty()) {
            page.notices.push_back(
                fmt::format("{}: HTML table has no cells, kept as plain text", where));
          } else {
            element.table = std::move(parsed);
            element.text = html_text(element.text);
          }
        } catch (const Error& e) {
          page.notices.push_back(
              fmt::format("{}: HTML table not parsed, kept as plain text ({})", where, e.what()));
        }
      }
    } else if (text->is_array()) {
      const bool coordinate = text->empty() || !(*text)[0].is_object() ||
                              (*text)[0].contains("x") || (*text)[0].contains("y");
      try {
        element.table = coordinate ? normalize_coord_cells(coord_cells_from_json(*text, where))
                                   : rowcol_from_json(*text, where);
        element.text = element.table->text();
      } catch (const Error& e) {
        if (e.code() != ErrorCode::OverlappingCells) throw;
        // Keep the text so fidelity metrics still see the content.
        std::vector<std::string> contents;
        for (const auto& cell : *text) contents.push_back(content_field(cell, where));
        for (const auto& c : contents) {
          const std::string collapsed = unicode::collapse_whitespace(c);
          if (collapsed.empty()) continue;
          if (!element.text.empty()) element.text += ' ';
          element.text += collapsed;
        }
        page.notices.push_back(fmt::format("{}: table dropped ({})", where, e.what()));
      }
    } else {
      malformed(where + ": \"text\" must be a string or a list of cells");
    }
    page.elements.push_back(std::move(element));
  }
  return page;
}

PairingResult pair_pages(const std::filesystem::path& gt_dir,
                         const std::filesystem::path& pred_dir, FormatHint hint) {
  const auto gt_files = json_files_by_stem(gt_dir, "ground-truth");
  const auto pred_files = json_files_by_stem(pred_dir, "prediction");

  PairingResult result;
  for (const auto& [stem, gt_path] : gt_files) {
    const auto pred_it = pred_files.find(stem);
    if (pred_it == pred_files.end()) {
      result.notices.push_back("missing prediction: " + stem);
      continue;
    }
    PagePair pair;
    pair.page_id = stem;
    try {
      pair.gt = parse_document(read_file(gt_path), hint, stem);
    } catch (const Error& e) {
      result.notices.push_back(
          fmt::format("unparsable ground truth: {} (page dropped: {})", stem, e.what()));
      continue;
    }
    try {
      pair.pred = parse_document(read_file(pred_it->second), hint, stem);
    } catch (const Error& e) {
      pair.pred = DocumentPage{stem, {}, {}};
      pair.notices.push_back(
          fmt::format("prediction unparsable, evaluated as an empty page ({})", e.what()));
    }
    result.pairs.push_back(std::move(pair));
  }
  for (const auto& [stem, path] : pred_files) {
    if (!gt_files.contains(stem)) result.notices.push_back("missing ground truth: " + stem);
  }
  if (result.pairs.empty()) {
    throw Error(ErrorCode::EmptyDataset,
                fmt::format("no ground-truth/prediction pairs in '{}' and '{}'", gt_dir.string(),
                            pred_dir.string()));
  }
  return result;
}

}  // namespace score
