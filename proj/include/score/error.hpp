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

#ifndef SCORE_ERROR_HPP
#define SCORE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace score {

enum class ErrorCode {
  MalformedInput,
  NoTableFound,
  MultipleTables,
  OverlappingCells,
  EmptyDataset,
  EmptyReference,
  InvalidThreshold,
  InvalidConfig,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as score::Error; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace score

#endif  // SCORE_ERROR_HPP
