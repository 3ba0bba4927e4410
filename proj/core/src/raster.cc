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

#include "hsidj/raster.h"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "hsidj/error.h"

namespace hsidj {

LinearIndex ToLinear(std::size_t row, std::size_t col,
                     const RasterShape& shape) {
  if (row >= shape.rows || col >= shape.cols) {
    throw Error(ErrorCode::kBounds,
                "pixel (" + std::to_string(row) + ", " + std::to_string(col) +
                    ") outside " + std::to_string(shape.rows) + "x" +
                    std::to_string(shape.cols) + " raster");
  }
  return static_cast<LinearIndex>(row * shape.cols + col);
}

PixelCoord FromLinear(LinearIndex idx, const RasterShape& shape) {
  if (idx >= shape.pixels()) {
    throw Error(ErrorCode::kBounds,
                "linear index " + std::to_string(idx) + " outside raster of " +
                    std::to_string(shape.pixels()) + " pixels");
  }
  return {idx / shape.cols, idx % shape.cols};
}

HsiCube::HsiCube(std::size_t rows, std::size_t cols, std::size_t bands,
                 std::vector<float> values)
    : rows_(rows), cols_(cols), bands_(bands), values_(std::move(values)) {
  if (rows_ == 0 || cols_ == 0 || bands_ == 0) {
    throw Error(ErrorCode::kIntegrity, "cube dimensions must be >= 1");
  }
  if (rows_ * cols_ > std::numeric_limits<LinearIndex>::max()) {
    throw Error(ErrorCode::kIntegrity, "raster too large for 32-bit indices");
  }
  if (values_.size() != rows_ * cols_ * bands_) {
    throw Error(ErrorCode::kIntegrity,
                "cube holds " + std::to_string(values_.size()) +
                    " values, expected " +
                    std::to_string(rows_ * cols_ * bands_));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::kIntegrity,
                  "non-finite value at element " + std::to_string(i));
    }
  }
}

GroundTruth::GroundTruth(std::size_t rows, std::size_t cols,
                         std::vector<Label> labels)
    : rows_(rows), cols_(cols), labels_(std::move(labels)) {
  if (rows_ == 0 || cols_ == 0) {
    throw Error(ErrorCode::kIntegrity, "ground truth dimensions must be >= 1");
  }
  if (rows_ * cols_ > std::numeric_limits<LinearIndex>::max()) {
    throw Error(ErrorCode::kIntegrity, "raster too large for 32-bit indices");
  }
  if (labels_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kIntegrity,
                "ground truth holds " + std::to_string(labels_.size()) +
                    " labels, expected " + std::to_string(rows_ * cols_));
  }
}

void RequireSameShape(const HsiCube& cube, const GroundTruth& gt) {
  if (cube.shape() != gt.shape()) {
    throw Error(ErrorCode::kConfig,
                "cube is " + std::to_string(cube.rows()) + "x" +
                    std::to_string(cube.cols()) + " but ground truth is " +
                    std::to_string(gt.rows()) + "x" +
                    std::to_string(gt.cols()));
  }
}

PatchSpec PatchSpec::FromWindow(std::size_t window) {
  if (window == 0) throw Error(ErrorCode::kConfig, "window must be >= 1");
  return PatchSpec{window, window / 2};
}

void SplitConfig::Validate() const {
  auto in_open_unit = [](double r) { return r > 0.0 && r < 1.0; };
  if (!in_open_unit(test_ratio) || !in_open_unit(val_ratio)) {
    throw Error(ErrorCode::kConfig,
                "ratios must lie in (0, 1); got test=" +
                    std::to_string(test_ratio) +
                    " val=" + std::to_string(val_ratio));
  }
}

std::span<const float> SpectralVector(const HsiCube& cube, LinearIndex idx) {
  if (idx >= cube.shape().pixels()) {
    throw Error(ErrorCode::kBounds,
                "linear index " + std::to_string(idx) + " outside cube");
  }
  return cube.pixel(idx);
}

}  // namespace hsidj
