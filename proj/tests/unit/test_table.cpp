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

#include "score/error.hpp"
#include "score/table.hpp"

using score::ErrorCode;
using score::NormalizedTable;
using score::TableCell;

namespace {

ErrorCode code_of(std::vector<TableCell> cells) {
  try {
    NormalizedTable t(std::move(cells));
  } catch (const score::Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::MalformedInput;
}

}  // namespace

TEST_CASE("cells are sorted and extents derived") {
  NormalizedTable t({{1, 0, 1, 1, "c"}, {0, 1, 1, 1, "b"}, {0, 0, 1, 1, "a"}});
  REQUIRE(t.cells().size() == 3);
  CHECK(t.cells()[0].content == "a");
  CHECK(t.cells()[1].content == "b");
  CHECK(t.cells()[2].content == "c");
  CHECK(t.n_rows() == 2);
  CHECK(t.n_cols() == 2);
  CHECK(t.text() == "a b c");
}

TEST_CASE("extents include spans") {
  NormalizedTable t({{0, 0, 2, 3, "wide"}});
  CHECK(t.n_rows() == 2);
  CHECK(t.n_cols() == 3);
  CHECK(t.covering(1, 2) == &t.cells()[0]);
  CHECK(t.covering(2, 0) == nullptr);
  CHECK(t.covering(-1, 0) == nullptr);
}

TEST_CASE("empty table") {
  NormalizedTable t;
  CHECK(t.empty());
  CHECK(t.n_rows() == 0);
  CHECK(t.text().empty());
  CHECK(t == NormalizedTable(std::vector<TableCell>{}));
}

TEST_CASE("text skips empty cells") {
  NormalizedTable t({{0, 0, 1, 1, ""}, {0, 1, 1, 1, "x"}, {1, 0, 1, 1, ""}, {1, 1, 1, 1, "y"}});
  CHECK(t.text() == "x y");
}

TEST_CASE("invalid cells") {
  CHECK(code_of({{0, 0, 1, 1, "a"}, {0, 0, 1, 1, "b"}}) == ErrorCode::OverlappingCells);
  CHECK(code_of({{0, 0, 2, 2, "a"}, {1, 1, 1, 1, "b"}}) == ErrorCode::OverlappingCells);
  CHECK(code_of({{-1, 0, 1, 1, "a"}}) == ErrorCode::MalformedInput);
  CHECK(code_of({{0, 0, 0, 1, "a"}}) == ErrorCode::MalformedInput);
  CHECK(code_of({{0, 0, 100000, 100000, "a"}}) == ErrorCode::MalformedInput);
}

TEST_CASE("overlap message names both cells") {
  try {
    NormalizedTable t({{0, 0, 1, 2, "left"}, {0, 1, 1, 1, "right"}});
    FAIL("expected OverlappingCells");
  } catch (const score::Error& e) {
    const std::string what = e.what();
    CHECK(what.find("\"left\"") != std::string::npos);
    CHECK(what.find("\"right\"") != std::string::npos);
  }
}
