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

#ifndef SCORE_CATEGORY_HPP
#define SCORE_CATEGORY_HPP

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace score {

enum class FunctionalCategory {
  Title,
  Text,
  List,
  Table,
  Figure,
  Caption,
  Header,
  Footer,
  Formula,
  Other,
};

inline constexpr std::size_t kCategoryCount = 10;

inline constexpr std::array<FunctionalCategory, kCategoryCount> kAllCategories = {
    FunctionalCategory::Title,  FunctionalCategory::Text,    FunctionalCategory::List,
    FunctionalCategory::Table,  FunctionalCategory::Figure,  FunctionalCategory::Caption,
    FunctionalCategory::Header, FunctionalCategory::Footer,  FunctionalCategory::Formula,
    FunctionalCategory::Other};

constexpr std::size_t index_of(FunctionalCategory c) { return static_cast<std::size_t>(c); }

std::string_view to_string(FunctionalCategory c);  // "TITLE", "TEXT", ...
std::optional<FunctionalCategory> parse_category(std::string_view name);

// Case-insensitive raw label -> category lookup with an OTHER fallback.
class CategoryMap {
 public:
  CategoryMap() = default;

  void set(std::string_view raw_label, FunctionalCategory category);
  FunctionalCategory lookup(std::string_view raw_label) const;

  const std::map<std::string, FunctionalCategory>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // "raw_label = CATEGORY" lines, '#' comments. Throws Error{InvalidConfig}.
  static CategoryMap parse(std::string_view text);
  static CategoryMap load(const std::filesystem::path& path);
  // The map shipped in config/category_map.txt, compiled in.
  static const CategoryMap& builtin();

  friend bool operator==(const CategoryMap&, const CategoryMap&) = default;

 private:
  static std::string key(std::string_view raw_label);

  std::map<std::string, FunctionalCategory> entries_;
};

inline FunctionalCategory map_category(std::string_view raw_label, const CategoryMap& map) {
  return map.lookup(raw_label);
}

}  // namespace score

#endif  // SCORE_CATEGORY_HPP
