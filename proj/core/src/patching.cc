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

#include "hsidj/patching.h"

#include <algorithm>
#include <string>

#include "hsidj/error.h"

namespace hsidj {

void ExtractPatchValues(const HsiCube& cube, std::size_t row, std::size_t col,
                        const PatchSpec& spec, std::span<float> out) {
  const std::size_t bands = cube.bands();
  if (out.size() != spec.cells() * bands) {
    throw Error(ErrorCode::kInput, "patch buffer has wrong size");
  }
  std::fill(out.begin(), out.end(), 0.0f);
  const long top = static_cast<long>(row) - static_cast<long>(spec.margin);
  const long left = static_cast<long>(col) - static_cast<long>(spec.margin);
  const long rows = static_cast<long>(cube.rows());
  const long cols = static_cast<long>(cube.cols());
  const long w = static_cast<long>(spec.window);
  const long c0 = std::max(0L, left);
  const long c1 = std::min(cols, left + w);
  if (c0 >= c1) return;
  const auto values = cube.values();
  for (long dr = 0; dr < w; ++dr) {
    const long r = top + dr;
    if (r < 0 || r >= rows) continue;
    const float* src =
        values.data() + (static_cast<std::size_t>(r * cols + c0)) * bands;
    float* dst = out.data() +
                 (static_cast<std::size_t>(dr * w + (c0 - left))) * bands;
    std::copy(src, src + static_cast<std::size_t>(c1 - c0) * bands, dst);
  }
}

PatchRecord ExtractPatch(const HsiCube& cube, const GroundTruth& gt,
                         std::size_t row, std::size_t col,
                         const PatchSpec& spec) {
  RequireSameShape(cube, gt);
  ToLinear(row, col, cube.shape());  // bounds check
  PatchRecord record;
  record.center = {row, col};
  record.label = gt.at(row, col);
  record.window = spec.window;
  record.bands = cube.bands();
  record.values.resize(spec.cells() * cube.bands());
  ExtractPatchValues(cube, row, col, spec, record.values);
  return record;
}

PatchStream::PatchStream(const HsiCube& cube, const GroundTruth& gt,
                         PatchSpec spec)
    : PatchStream(cube, gt, spec, 0, cube.rows()) {}

PatchStream::PatchStream(const HsiCube& cube, const GroundTruth& gt,
                         PatchSpec spec, std::size_t row_begin,
                         std::size_t row_end)
    : cube_(cube),
      gt_(gt),
      spec_(spec),
      row_end_(std::min(row_end, cube.rows())),
      padded_width_(cube.cols() + spec.window - 1),
      next_row_(row_begin) {
  RequireSameShape(cube, gt);
  if (spec_.window == 0) throw Error(ErrorCode::kConfig, "window must be >= 1");
  ring_.assign(spec_.window * padded_width_ * cube.bands(), 0.0f);
  record_.window = spec_.window;
  record_.bands = cube.bands();
  record_.values.assign(spec_.cells() * cube.bands(), 0.0f);
}

const float* PatchStream::RingRow(long original_row) const {
  const long margin = static_cast<long>(spec_.margin);
  const std::size_t slot =
      static_cast<std::size_t>(original_row + margin) % spec_.window;
  return ring_.data() + slot * padded_width_ * cube_.bands();
}

void PatchStream::LoadRow(long original_row) {
  float* dst = const_cast<float*>(RingRow(original_row));
  const std::size_t bands = cube_.bands();
  std::fill(dst, dst + padded_width_ * bands, 0.0f);
  if (original_row >= 0 && original_row < static_cast<long>(cube_.rows())) {
    const float* src = cube_.values().data() +
                       static_cast<std::size_t>(original_row) *
                           cube_.cols() * bands;
    std::copy(src, src + cube_.cols() * bands, dst + spec_.margin * bands);
  }
  loaded_through_ = original_row;
}

bool PatchStream::Next() {
  if (started_) {
    if (++next_col_ == cube_.cols()) {
      next_col_ = 0;
      ++next_row_;
    }
  }
  if (next_row_ >= row_end_) return false;

  const long margin = static_cast<long>(spec_.margin);
  const long w = static_cast<long>(spec_.window);
  const long top = static_cast<long>(next_row_) - margin;
  if (!started_) {
    for (long r = top; r < top + w; ++r) LoadRow(r);
    started_ = true;
  } else if (next_col_ == 0) {
    while (loaded_through_ < top + w - 1) LoadRow(loaded_through_ + 1);
  }

  const std::size_t bands = cube_.bands();
  const std::size_t span = spec_.window * bands;
  for (std::size_t dr = 0; dr < spec_.window; ++dr) {
    const float* src =
        RingRow(top + static_cast<long>(dr)) + next_col_ * bands;
    std::copy(src, src + span, record_.values.data() + dr * span);
  }
  record_.center = {next_row_, next_col_};
  record_.label = gt_.at(next_row_, next_col_);
  return true;
}

PatchSet GatherPatches(const HsiCube& cube, const GroundTruth& gt,
                       std::span<const LinearIndex> indices,
                       const PatchSpec& spec) {
  RequireSameShape(cube, gt);
  std::vector<bool> seen(cube.shape().pixels(), false);
  PatchSet set{spec, {}};
  set.records.reserve(indices.size());
  for (LinearIndex idx : indices) {
    const PixelCoord at = FromLinear(idx, cube.shape());
    if (seen[idx]) {
      throw Error(ErrorCode::kDuplicateIndex,
                  "index " + std::to_string(idx) + " requested twice");
    }
    seen[idx] = true;
    set.records.push_back(ExtractPatch(cube, gt, at.row, at.col, spec));
  }
  return set;
}

PatchSet CollectPatches(const HsiCube& cube, const GroundTruth& gt,
                        const PatchSpec& spec) {
  PatchSet set{spec, {}};
  set.records.reserve(cube.shape().pixels());
  PatchStream stream(cube, gt, spec);
  while (stream.Next()) set.records.push_back(stream.current());
  return set;
}

std::vector<float> FlattenPatch(const PatchRecord& patch) {
  return patch.values;
}

}  // namespace hsidj
