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

#include "score/error.hpp"

namespace score {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::NoTableFound: return "NoTableFound";
    case ErrorCode::MultipleTables: return "MultipleTables";
    case ErrorCode::OverlappingCells: return "OverlappingCells";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::EmptyReference: return "EmptyReference";
    case ErrorCode::InvalidThreshold: return "InvalidThreshold";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace score
