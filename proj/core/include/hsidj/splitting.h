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

#ifndef HSIDJ_SPLITTING_H_
#define HSIDJ_SPLITTING_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hsidj/raster.h"

namespace hsidj {

struct ClassCount {
  Label label = 0;
  std::size_t count = 0;

  friend bool operator==(const ClassCount&, const ClassCount&) = default;
};

// Nonzero labels in ascending order with exact pixel counts. Throws
// kEmptyGroundTruth when every pixel is background.
std::vector<ClassCount> ClassHistogram(const GroundTruth& gt);

struct SplitCounts {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;

  friend bool operator==(const SplitCounts&, const SplitCounts&) = default;
};

// Two-stage per-class split sizes:
//   test = ceil(n * test_ratio)
//   val  = ceil((n - test) * val_ratio)
//   train = n - test - val
// The products are snapped to the nearest integer when within 1e-9
// (relative) of it, so 20 * 0.7 counts as exactly 14. Throws kClassTooSmall
// (naming `label`) when any of the three would be empty, kConfig when a
// ratio is outside (0, 1).
SplitCounts ComputeSplitCounts(std::size_t n, double test_ratio,
                               double val_ratio, Label label = 0);

struct ClassSplit {
  Label label = 0;
  std::vector<LinearIndex> train;
  std::vector<LinearIndex> val;
  std::vector<LinearIndex> test;

  std::size_t size() const { return train.size() + val.size() + test.size(); }
  friend bool operator==(const ClassSplit&, const ClassSplit&) = default;
};

struct SplitProvenance {
  std::uint64_t seed = 0;
  double test_ratio = 0;
  double val_ratio = 0;
  std::uint64_t gt_fingerprint = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;

  friend bool operator==(const SplitProvenance&,
                         const SplitProvenance&) = default;
};

// Per-class disjoint train / validation / test index lists.
struct SplitIndices {
  std::vector<ClassSplit> classes;  // ascending label
  SplitProvenance provenance;

  std::vector<LinearIndex> AllTrain() const;
  std::vector<LinearIndex> AllVal() const;
  std::vector<LinearIndex> AllTest() const;
  std::vector<Label> Labels() const;
  RasterShape shape() const { return {provenance.rows, provenance.cols}; }

  friend bool operator==(const SplitIndices&, const SplitIndices&) = default;
};

// 64-bit FNV-1a (offset basis 0xcbf29ce484222325, prime 0x100000001b3) over
// rows and cols as 4-byte little-endian integers followed by every label as
// a 2-byte little-endian integer in row-major order.
std::uint64_t GroundTruthFingerprint(const GroundTruth& gt);

// For each class in ascending label order: collect its row-major pixel
// indices, shuffle them with one Rng(seed) shared across classes (Fisher-
// Yates, see random.h), then take the first `test` as test, the next `val`
// as validation and the rest as training.
SplitIndices DisjointSplit(const GroundTruth& gt, const SplitConfig& cfg);

// Split file I/O. The file is JSON:
//   {"format": "hsidj-split", "version": 1, "seed": <u64>,
//    "test_ratio": <real>, "val_ratio": <real>,
//    "gt_fingerprint": "<16 lowercase hex digits>", "rows": n, "cols": n,
//    "classes": [{"label": c, "train": [...], "val": [...], "test": [...]}]}
// Indices are row-major linear indices.
std::string SplitsToJson(const SplitIndices& splits);
void SaveSplits(const SplitIndices& splits, const std::filesystem::path& path);

// Parses without checking split invariants. Malformed JSON or missing fields
// raise kCorruptSplit.
SplitIndices ParseSplits(const std::string& text);
SplitIndices ReadSplitsUnchecked(const std::filesystem::path& path);

// Parses and re-verifies every invariant: indices in range, no duplicates,
// pairwise disjoint sets, per-class counts matching ComputeSplitCounts.
// When `gt` is given, the fingerprint must match (kWrongDataset) and labels
// plus union completeness are checked too (kCorruptSplit).
SplitIndices LoadSplits(const std::filesystem::path& path,
                        const GroundTruth* gt = nullptr);

}  // namespace hsidj

#endif  // HSIDJ_SPLITTING_H_
