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

#ifndef HSIDJ_RASTER_H_
#define HSIDJ_RASTER_H_

// Raster data model shared by every stage of the pipeline: the hyperspectral
// cube, its ground-truth label raster, and the index arithmetic that ties a
// (row, col) position to the row-major linear index used by splits, reports
// and maps.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hsidj {

// Class label. 0 is background and never a class.
using Label = std::uint16_t;
inline constexpr Label kBackground = 0;

// Row-major pixel index: row * cols + col.
using LinearIndex = std::uint32_t;

struct PixelCoord {
  std::size_t row = 0;
  std::size_t col = 0;

  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

struct RasterShape {
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t pixels() const { return rows * cols; }
  friend bool operator==(const RasterShape&, const RasterShape&) = default;
};

// Throws kBounds when (row, col) lies outside `shape`.
LinearIndex ToLinear(std::size_t row, std::size_t col, const RasterShape& shape);
// Throws kBounds when idx >= shape.pixels().
PixelCoord FromLinear(LinearIndex idx, const RasterShape& shape);

// M x N x B reflectance cube stored band-interleaved-by-pixel, so the B values
// of one pixel are contiguous. Immutable after construction.
class HsiCube {
 public:
  // Validates dimensions and rejects non-finite values (kIntegrity).
  HsiCube(std::size_t rows, std::size_t cols, std::size_t bands,
          std::vector<float> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t bands() const { return bands_; }
  RasterShape shape() const { return {rows_, cols_}; }

  std::span<const float> values() const { return values_; }

  // Unchecked; callers hold the invariant.
  float at(std::size_t row, std::size_t col, std::size_t band) const {
    return values_[(row * cols_ + col) * bands_ + band];
  }
  std::span<const float> pixel(LinearIndex idx) const {
    return std::span<const float>(values_).subspan(
        static_cast<std::size_t>(idx) * bands_, bands_);
  }

  friend bool operator==(const HsiCube&, const HsiCube&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t bands_;
  std::vector<float> values_;
};

// Per-pixel integer labels, row-major. Immutable after construction.
class GroundTruth {
 public:
  GroundTruth(std::size_t rows, std::size_t cols, std::vector<Label> labels);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  RasterShape shape() const { return {rows_, cols_}; }
  std::span<const Label> labels() const { return labels_; }

  Label at(std::size_t row, std::size_t col) const {
    return labels_[row * cols_ + col];
  }
  Label at(LinearIndex idx) const { return labels_[idx]; }

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Label> labels_;
};

// Throws kConfig when the cube and the label raster disagree on rows/cols.
void RequireSameShape(const HsiCube& cube, const GroundTruth& gt);

// Square spatial window of side `window`; margin = floor(window / 2).
struct PatchSpec {
  std::size_t window = 1;
  std::size_t margin = 0;

  // Throws kConfig for window == 0.
  static PatchSpec FromWindow(std::size_t window);
  std::size_t cells() const { return window * window; }
};

struct SplitConfig {
  double test_ratio = 0.7;
  double val_ratio = 0.5;
  std::uint64_t seed = 0;

  // Throws kConfig unless both ratios lie strictly inside (0, 1).
  void Validate() const;
};

// The B band values of pixel `idx`, in band order. Throws kBounds.
std::span<const float> SpectralVector(const HsiCube& cube, LinearIndex idx);

}  // namespace hsidj

#endif  // HSIDJ_RASTER_H_
