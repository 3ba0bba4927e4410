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

#ifndef HSIDJ_REPORT_IO_H_
#define HSIDJ_REPORT_IO_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hsidj/metrics.h"
#include "hsidj/protocol.h"

namespace hsidj {

// Everything needed to re-run an evaluation exactly.
struct RunMetadata {
  std::string model;
  std::string features;
  std::size_t window = 0;
  std::size_t k = 0;
  std::size_t epochs = 0;
  double learning_rate = 0.0;
  double lambda = 0.0;
  std::uint64_t model_seed = 0;
  std::uint64_t split_seed = 0;
  double test_ratio = 0.0;
  double val_ratio = 0.0;
  std::uint64_t gt_fingerprint = 0;
  bool overlap_mode = false;
  double reuse_fraction = 0.0;
  std::uint64_t overlap_seed = 0;
};

std::string FormatFingerprint(std::uint64_t fingerprint);

// JSON with one entry per set (per-class rows plus kappa / oa / aa /
// time_s). The "full" set is flagged as including training pixels; overlap
// runs carry "watermark": "OVERLAP MODE".
std::string ProtocolReportToJson(const ProtocolResult& result,
                                 const RunMetadata& meta,
                                 const OverlapEvaluation* overlap = nullptr);

// Terminal table: one row per class and Kappa / OA / AA / Time (S) rows, one
// column per report.
std::string FormatReportTable(std::span<const EvalReport* const> reports,
                              bool overlap_mode = false);

}  // namespace hsidj

#endif  // HSIDJ_REPORT_IO_H_
