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

#include "hsidj/features.h"

#include <algorithm>
#include <string>

#include "hsidj/error.h"
#include "hsidj/parallel.h"
#include "hsidj/patching.h"

namespace hsidj {

std::string_view FeatureKindName(FeatureKind kind) {
  return kind == FeatureKind::kSpectrum ? "spectrum" : "patch";
}

FeatureKind ParseFeatureKind(std::string_view name) {
  if (name == "spectrum") return FeatureKind::kSpectrum;
  if (name == "patch") return FeatureKind::kPatch;
  throw Error(ErrorCode::kConfig,
              "unknown feature kind '" + std::string(name) + "'");
}

void ExtractFeature(const HsiCube& cube, LinearIndex idx,
                    const FeatureSpec& spec, std::span<float> out) {
  if (spec.kind == FeatureKind::kSpectrum) {
    const auto v = SpectralVector(cube, idx);
    std::copy(v.begin(), v.end(), out.begin());
    return;
  }
  const PixelCoord at = FromLinear(idx, cube.shape());
  ExtractPatchValues(cube, at.row, at.col, PatchSpec::FromWindow(spec.window),
                     out);
}

FeatureMatrix BuildFeatures(const HsiCube& cube,
                            std::span<const LinearIndex> indices,
                            const FeatureSpec& spec, std::size_t threads) {
  FeatureMatrix m;
  m.rows = indices.size();
  m.dim = spec.Dim(cube.bands());
  m.data.resize(m.rows * m.dim);
  ParallelFor(m.rows, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      ExtractFeature(cube, indices[i], spec,
                     std::span<float>(m.data).subspan(i * m.dim, m.dim));
    }
  });
  return m;
}

}  // namespace hsidj
