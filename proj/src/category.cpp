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

#include "score/category.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "score/error.hpp"
#include "score/unicode.hpp"

namespace score {

namespace detail {
extern const std::string_view kBuiltinCategoryMap;
}

std::string_view to_string(FunctionalCategory c) {
  switch (c) {
    case FunctionalCategory::Title: return "TITLE";
    case FunctionalCategory::Text: return "TEXT";
    case FunctionalCategory::List: return "LIST";
    case FunctionalCategory::Table: return "TABLE";
    case FunctionalCategory::Figure: return "FIGURE";
    case FunctionalCategory::Caption: return "CAPTION";
    case FunctionalCategory::Header: return "HEADER";
    case FunctionalCategory::Footer: return "FOOTER";
    case FunctionalCategory::Formula: return "FORMULA";
    case FunctionalCategory::Other: return "OTHER";
  }
  return "OTHER";
}

std::optional<FunctionalCategory> parse_category(std::string_view name) {
  std::string upper = unicode::trim(name);
  for (char& ch : upper) {
    if (ch >= 'a' && ch <= 'z') ch = static_cast<char>(ch - 'a' + 'A');
  }
  for (FunctionalCategory c : kAllCategories) {
    if (to_string(c) == upper) return c;
  }
  return std::nullopt;
}

std::string CategoryMap::key(std::string_view raw_label) {
  return unicode::case_fold(unicode::trim(raw_label));
}

void CategoryMap::set(std::string_view raw_label, FunctionalCategory category) {
  entries_[key(raw_label)] = category;
}

FunctionalCategory CategoryMap::lookup(std::string_view raw_label) const {
  const auto it = entries_.find(key(raw_label));
  return it == entries_.end() ? FunctionalCategory::Other : it->second;
}

CategoryMap CategoryMap::parse(std::string_view text) {
  CategoryMap map;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (unicode::trim(line).empty()) continue;
    const auto eq = line.rfind('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidConfig,
                  fmt::format("category map line {}: expected 'raw_label = CATEGORY'", line_no));
    }
    const std::string label = unicode::trim(std::string_view(line).substr(0, eq));
    const std::string category = unicode::trim(std::string_view(line).substr(eq + 1));
    const auto parsed = parse_category(category);
    if (label.empty() || !parsed) {
      throw Error(ErrorCode::InvalidConfig,
                  fmt::format("category map line {}: bad entry '{}'", line_no, line));
    }
    map.set(label, *parsed);
  }
  return map;
}

CategoryMap CategoryMap::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::InvalidConfig, "cannot open category map '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

const CategoryMap& CategoryMap::builtin() {
  static const CategoryMap map = parse(detail::kBuiltinCategoryMap);
  return map;
}

}  // namespace score
