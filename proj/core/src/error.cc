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

#include "hsidj/error.h"

namespace hsidj {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBounds: return "bounds";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kIntegrity: return "integrity";
    case ErrorCode::kUnsupportedFormat: return "unsupported-format";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kClassTooSmall: return "class-too-small";
    case ErrorCode::kEmptyGroundTruth: return "empty-ground-truth";
    case ErrorCode::kDuplicateIndex: return "duplicate-index";
    case ErrorCode::kWrongDataset: return "wrong-dataset";
    case ErrorCode::kCorruptSplit: return "corrupt-split";
    case ErrorCode::kFit: return "fit";
    case ErrorCode::kDivergence: return "divergence";
    case ErrorCode::kInput: return "input";
    case ErrorCode::kEmptyEvaluation: return "empty-evaluation";
    case ErrorCode::kCoverage: return "coverage";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + " error: " +
                         message),
      code_(code) {}

}  // namespace hsidj
