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

#ifndef HSIDJ_MAPGEN_H_
#define HSIDJ_MAPGEN_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hsidj/raster.h"
#include "hsidj/splitting.h"

namespace hsidj {

using Rgb = std::array<std::uint8_t, 3>;

// Entry 0 is black (background / outside the rendered domain); entry c is
// the color of class label c.
struct Palette {
  std::vector<Rgb> colors;
};

// Black followed by 20 high-contrast colors:
//   1 (230,25,75)   2 (60,180,75)    3 (255,225,25)  4 (0,130,200)
//   5 (245,130,48)  6 (145,30,180)   7 (70,240,240)  8 (240,50,230)
//   9 (210,245,60) 10 (250,190,212) 11 (0,128,128)  12 (220,190,255)
//  13 (170,110,40) 14 (255,250,200) 15 (128,0,0)    16 (170,255,195)
//  17 (128,128,0)  18 (255,215,180) 19 (0,0,128)    20 (128,128,128)
const Palette& DefaultPalette();

// Lines "label,r,g,b" under a header row.
std::string PaletteCsv(const Palette& palette);

enum class MapMode {
  kValOnly,      // validation pixels only
  kTestOnly,     // test pixels only (the default, honest map)
  kFullLabeled,  // every labeled pixel
  kFullScene,    // every pixel, background included
};

std::string_view MapModeName(MapMode mode);
MapMode ParseMapMode(std::string_view name);

struct ThematicMap {
  std::size_t rows = 0;
  std::size_t cols = 0;
  MapMode mode = MapMode::kTestOnly;
  std::vector<std::uint16_t> indices;  // palette index per pixel, row-major

  friend bool operator==(const ThematicMap&, const ThematicMap&) = default;
};

using PredictionMap = std::unordered_map<LinearIndex, Label>;

// Pixels of the mode's domain, ascending.
std::vector<LinearIndex> MapDomain(const GroundTruth& gt,
                                   const SplitIndices& splits, MapMode mode);

// Colors every in-domain pixel by its predicted label; everything else is
// 0. Throws kCoverage listing the in-domain pixels without a prediction.
ThematicMap Render(const GroundTruth& gt, const SplitIndices& splits,
                   const PredictionMap& predictions, MapMode mode);

// Render with the ground-truth labels as predictions.
ThematicMap RenderTruth(const GroundTruth& gt, const SplitIndices& splits,
                        MapMode mode);

// P6, maxval 255. Throws kConfig for indices beyond the palette.
std::string EncodePpm(const ThematicMap& map, const Palette& palette);
void WritePpm(const ThematicMap& map, const Palette& palette,
              const std::filesystem::path& path);

}  // namespace hsidj

#endif  // HSIDJ_MAPGEN_H_
