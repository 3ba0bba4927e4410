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

#ifndef HSIDJ_AUDIT_H_
#define HSIDJ_AUDIT_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hsidj/raster.h"
#include "hsidj/splitting.h"

namespace hsidj {

// Outcome of an index-level split audit. Every violation is recorded, not
// just the first one found.
struct DisjointnessCheck {
  bool shape_matches = true;
  bool fingerprint_matches = true;
  bool indices_in_range = true;
  bool no_duplicates = true;
  bool train_val_disjoint = true;
  bool train_test_disjoint = true;
  bool val_test_disjoint = true;
  bool labels_consistent = true;
  bool union_complete = true;
  bool counts_conform = true;

  std::vector<LinearIndex> out_of_range;
  std::vector<LinearIndex> duplicates;
  std::vector<LinearIndex> train_val_overlap;
  std::vector<LinearIndex> train_test_overlap;
  std::vector<LinearIndex> val_test_overlap;
  std::vector<LinearIndex> mislabeled;
  std::vector<LinearIndex> missing;
  std::vector<std::string> violations;

  bool index_disjoint() const {
    return train_val_disjoint && train_test_disjoint && val_test_disjoint &&
           no_duplicates;
  }
  bool passed() const { return violations.empty(); }
};

DisjointnessCheck VerifyDisjoint(const SplitIndices& splits,
                                 const GroundTruth& gt);

// Raster cells shared by the windows centered at `a` and `b`:
// max(0, window - |drow|) * max(0, window - |dcol|).
std::size_t SharedPixels(const PixelCoord& a, const PixelCoord& b,
                         const PatchSpec& spec);

struct OverlapPair {
  LinearIndex query = 0;
  LinearIndex train = 0;
  std::size_t shared = 0;

  friend bool operator==(const OverlapPair&, const OverlapPair&) = default;
};

// Spatial overlap of one evaluation set's windows with the training windows.
// A query overlaps when some training window shares >= 1 cell with it, i.e.
// their Chebyshev distance is below the window size. Per query, the training
// center sharing the most cells (lowest index on ties) is its partner.
struct SetOverlap {
  std::size_t evaluated = 0;
  std::size_t overlapping = 0;
  double overlapping_fraction = 0.0;
  // Mean over queries of (partner shared cells) / window^2.
  double mean_shared_pixel_fraction = 0.0;
  // Sorted by shared cells descending, then query, then train index.
  std::vector<OverlapPair> worst_offenders;

  friend bool operator==(const SetOverlap&, const SetOverlap&) = default;
};

struct LeakageOptions {
  std::size_t top_k = 10;
  std::size_t threads = 1;
};

// Grid-bucketed: training centers are binned into window-sized cells and a
// query only inspects the 3x3 block of cells around it.
SetOverlap MeasureOverlap(std::span<const LinearIndex> queries,
                          std::span<const LinearIndex> train,
                          const RasterShape& shape, const PatchSpec& spec,
                          const LeakageOptions& options = {});

struct LeakageReport {
  bool train_val_disjoint = true;
  bool train_test_disjoint = true;
  bool val_test_disjoint = true;
  bool union_complete = true;
  bool counts_conform = true;
  std::size_t window = 1;
  SetOverlap test_vs_train;
  SetOverlap val_vs_train;
};

LeakageReport BuildLeakageReport(const SplitIndices& splits,
                                 const GroundTruth& gt, const PatchSpec& spec,
                                 const LeakageOptions& options = {});

std::string LeakageReportToJson(const LeakageReport& report,
                                const SplitIndices& splits);
std::string FormatLeakageSummary(const LeakageReport& report,
                                 const DisjointnessCheck& check);

}  // namespace hsidj

#endif  // HSIDJ_AUDIT_H_
