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

#include <doctest.h>

#include "score/unicode.hpp"

using namespace score::unicode;

TEST_CASE("utf8 validity") {
  CHECK(is_valid_utf8(""));
  CHECK(is_valid_utf8("caf\xC3\xA9"));
  CHECK_FALSE(is_valid_utf8("\xC3"));
  CHECK_FALSE(is_valid_utf8("\xC0\xAF"));          // overlong
  CHECK_FALSE(is_valid_utf8("\xED\xA0\x80"));      // surrogate
  CHECK_FALSE(is_valid_utf8("\xF4\x90\x80\x80"));  // above U+10FFFF
}

TEST_CASE("decode counts scalar values, not bytes") {
  CHECK(length("Stra\xC3\x9F" "e") == 6);
  CHECK(length("\xE6\x95\xB0\xE6\x8D\xAE") == 2);
  CHECK(decode("\xFF" "a") == U"�" U"a");
  CHECK(encode(decode("na\xC3\xAFve \xF0\x9F\x98\x80")) == "na\xC3\xAFve \xF0\x9F\x98\x80");
}

TEST_CASE("normalization forms") {
  const std::string decomposed = "e\xCC\x81";  // e + combining acute
  CHECK(normalize(decomposed, Normalization::NFC) == "\xC3\xA9");
  CHECK(normalize(decomposed, Normalization::None) == decomposed);
  CHECK(normalize("\xEF\xAC\x81", Normalization::NFKC) == "fi");  // ligature
  CHECK(normalize("\xEF\xAC\x81", Normalization::NFC) == "\xEF\xAC\x81");
}

TEST_CASE("case folding") {
  CHECK(case_fold("Q1 REVENUE") == "q1 revenue");
  CHECK(case_fold("Stra\xC3\x9F" "e") == "strasse");
}

TEST_CASE("whitespace handling") {
  CHECK(collapse_whitespace("  a \t\n b\xC2\xA0\xC2\xA0" "c  ") == "a b c");
  CHECK(collapse_whitespace("") == "");
  CHECK(trim("\n x y \t") == "x y");
  CHECK(split_whitespace(" a  b　c ") == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_whitespace("   ").empty());
}

TEST_CASE("punctuation") {
  CHECK(is_punct(U'.'));
  CHECK(is_punct(U'—'));
  CHECK_FALSE(is_punct(U'a'));
  CHECK(strip_punct("(est.)") == "est");
  CHECK(strip_punct("$100K") == "$100K");  // currency is a symbol, not punctuation
}
