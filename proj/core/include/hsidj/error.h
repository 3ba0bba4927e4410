/*
 * Copyright 2026 The hsidj Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HSIDJ_ERROR_H_
#define HSIDJ_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hsidj {

// Every failure raised by the library carries one of these codes so callers
// (notably the CLI) can map it to an exit status without string matching.
enum class ErrorCode {
  kBounds,
  kParse,
  kIntegrity,
  kUnsupportedFormat,
  kFormat,
  kConfig,
  kClassTooSmall,
  kEmptyGroundTruth,
  kDuplicateIndex,
  kWrongDataset,
  kCorruptSplit,
  kFit,
  kDivergence,
  kInput,
  kEmptyEvaluation,
  kCoverage,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hsidj

#endif  // HSIDJ_ERROR_H_
