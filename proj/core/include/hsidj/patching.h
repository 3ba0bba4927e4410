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

#ifndef HSIDJ_PATCHING_H_
#define HSIDJ_PATCHING_H_

#include <cstddef>
#include <span>
#include <vector>

#include "hsidj/raster.h"

namespace hsidj {

// A window x window x bands sub-array of the zero-padded cube, labeled by its
// center pixel. Values are stored (row, col, band) with band fastest.
//
// Window placement: along each axis the window covers original coordinates
// [center - margin, center - margin + window - 1] with margin = window / 2.
// For odd windows this is the symmetric span center +/- (window - 1) / 2; for
// even windows the window extends one cell further before the center than
// after it. Cells outside the raster are exactly 0.
struct PatchRecord {
  PixelCoord center;
  Label label = kBackground;
  std::size_t window = 0;
  std::size_t bands = 0;
  std::vector<float> values;

  float at(std::size_t dr, std::size_t dc, std::size_t band) const {
    return values[(dr * window + dc) * bands + band];
  }

  friend bool operator==(const PatchRecord&, const PatchRecord&) = default;
};

struct PatchSet {
  PatchSpec spec;
  std::vector<PatchRecord> records;
};

// Throws kBounds for centers outside the raster, kConfig on shape mismatch.
PatchRecord ExtractPatch(const HsiCube& cube, const GroundTruth& gt,
                         std::size_t row, std::size_t col,
                         const PatchSpec& spec);

// Writes the window values of (row, col) into `out` (size window^2 * bands)
// straight from the cube. Unchecked apart from the output size.
void ExtractPatchValues(const HsiCube& cube, std::size_t row, std::size_t col,
                        const PatchSpec& spec, std::span<float> out);

// Streams one patch per pixel in row-major order over rows
// [row_begin, row_end). Working memory is a ring of `window` zero-padded
// rows, i.e. window * (cols + window - 1) * bands floats, plus one record;
// it does not grow with the number of rows. Disjoint row ranges can be
// streamed concurrently over the same cube.
//
//   PatchStream stream(cube, gt, spec);
//   while (stream.Next()) Use(stream.current());
class PatchStream {
 public:
  PatchStream(const HsiCube& cube, const GroundTruth& gt, PatchSpec spec);
  PatchStream(const HsiCube& cube, const GroundTruth& gt, PatchSpec spec,
              std::size_t row_begin, std::size_t row_end);

  // Advances to the next center; false once the range is exhausted.
  bool Next();
  const PatchRecord& current() const { return record_; }

  std::size_t scratch_floats() const {
    return ring_.capacity() + record_.values.capacity();
  }

 private:
  void LoadRow(long original_row);
  const float* RingRow(long original_row) const;

  const HsiCube& cube_;
  const GroundTruth& gt_;
  PatchSpec spec_;
  std::size_t row_end_;
  std::size_t padded_width_;  // in pixels
  std::vector<float> ring_;
  PatchRecord record_;
  std::size_t next_row_;
  std::size_t next_col_ = 0;
  long loaded_through_ = 0;  // last original row present in the ring
  bool started_ = false;
};

// Materializes the patches of `indices` in the given order. Throws
// kDuplicateIndex on repeated indices and kBounds on invalid ones.
PatchSet GatherPatches(const HsiCube& cube, const GroundTruth& gt,
                       std::span<const LinearIndex> indices,
                       const PatchSpec& spec);

// Full materialization, one record per pixel. Memory is
// rows * cols * window^2 * bands floats; prefer PatchStream.
PatchSet CollectPatches(const HsiCube& cube, const GroundTruth& gt,
                        const PatchSpec& spec);

// Feature vector in (row, col, band) order, length window^2 * bands.
std::vector<float> FlattenPatch(const PatchRecord& patch);

}  // namespace hsidj

#endif  // HSIDJ_PATCHING_H_
