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

#ifndef SCORE_UNICODE_HPP
#define SCORE_UNICODE_HPP

#include <string>
#include <string_view>
#include <vector>

namespace score::unicode {

enum class Normalization { None, NFC, NFKC };

// Strict UTF-8 check (no overlongs, no surrogates).
bool is_valid_utf8(std::string_view text);

// Decodes UTF-8 into scalar values. Ill-formed sequences decode to U+FFFD.
std::u32string decode(std::string_view text);
std::string encode(std::u32string_view text);

std::size_t length(std::string_view text);

bool is_space(char32_t c);
bool is_punct(char32_t c);

std::string normalize(std::string_view text, Normalization form);
std::string case_fold(std::string_view text);
std::string strip_punct(std::string_view text);

// Runs of Unicode whitespace become one ASCII space; both ends trimmed.
std::string collapse_whitespace(std::string_view text);
std::string trim(std::string_view text);

std::vector<std::string> split_whitespace(std::string_view text);

}  // namespace score::unicode

#endif  // SCORE_UNICODE_HPP
