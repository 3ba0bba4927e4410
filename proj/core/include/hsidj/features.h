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

#ifndef HSIDJ_FEATURES_H_
#define HSIDJ_FEATURES_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "hsidj/raster.h"

namespace hsidj {

enum class FeatureKind {
  kSpectrum,  // the B band values of the pixel
  kPatch,     // the flattened window x window x B patch around the pixel
};

std::string_view FeatureKindName(FeatureKind kind);
FeatureKind ParseFeatureKind(std::string_view name);

struct FeatureSpec {
  FeatureKind kind = FeatureKind::kSpectrum;
  std::size_t window = 1;  // ignored for kSpectrum

  std::size_t Dim(std::size_t bands) const {
    return kind == FeatureKind::kSpectrum ? bands : window * window * bands;
  }
  friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;
};

// Dense row-major sample x feature matrix.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t dim = 0;
  std::vector<float> data;

  std::span<const float> row(std::size_t i) const {
    return std::span<const float>(data).subspan(i * dim, dim);
  }
};

void ExtractFeature(const HsiCube& cube, LinearIndex idx,
                    const FeatureSpec& spec, std::span<float> out);

FeatureMatrix BuildFeatures(const HsiCube& cube,
                            std::span<const LinearIndex> indices,
                            const FeatureSpec& spec, std::size_t threads = 1);

}  // namespace hsidj

#endif  // HSIDJ_FEATURES_H_
