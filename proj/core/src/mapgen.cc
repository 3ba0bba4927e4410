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

#include "hsidj/mapgen.h"

#include <algorithm>
#include <sstream>

#include "file_util.h"
#include "hsidj/error.h"

namespace hsidj {

const Palette& DefaultPalette() {
  static const Palette palette{{
      {0, 0, 0},       {230, 25, 75},   {60, 180, 75},   {255, 225, 25},
      {0, 130, 200},   {245, 130, 48},  {145, 30, 180},  {70, 240, 240},
      {240, 50, 230},  {210, 245, 60},  {250, 190, 212}, {0, 128, 128},
      {220, 190, 255}, {170, 110, 40},  {255, 250, 200}, {128, 0, 0},
      {170, 255, 195}, {128, 128, 0},   {255, 215, 180}, {0, 0, 128},
      {128, 128, 128},
  }};
  return palette;
}

std::string PaletteCsv(const Palette& palette) {
  std::ostringstream out;
  out << "label,r,g,b\n";
  for (std::size_t i = 0; i < palette.colors.size(); ++i) {
    const Rgb& c = palette.colors[i];
    out << i << ',' << int{c[0]} << ',' << int{c[1]} << ',' << int{c[2]}
        << '\n';
  }
  return out.str();
}

std::string_view MapModeName(MapMode mode) {
  switch (mode) {
    case MapMode::kValOnly: return "val_only";
    case MapMode::kTestOnly: return "test_only";
    case MapMode::kFullLabeled: return "full_labeled";
    case MapMode::kFullScene: return "full_scene";
  }
  return "test_only";
}

MapMode ParseMapMode(std::string_view name) {
  for (MapMode m : {MapMode::kValOnly, MapMode::kTestOnly,
                    MapMode::kFullLabeled, MapMode::kFullScene}) {
    if (MapModeName(m) == name) return m;
  }
  throw Error(ErrorCode::kConfig, "unknown map mode '" + std::string(name) +
                                      "'");
}

std::vector<LinearIndex> MapDomain(const GroundTruth& gt,
                                   const SplitIndices& splits, MapMode mode) {
  std::vector<LinearIndex> domain;
  switch (mode) {
    case MapMode::kValOnly: domain = splits.AllVal(); break;
    case MapMode::kTestOnly: domain = splits.AllTest(); break;
    case MapMode::kFullLabeled: {
      const auto labels = gt.labels();
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != kBackground) domain.push_back(static_cast<LinearIndex>(i));
      }
      break;
    }
    case MapMode::kFullScene:
      domain.resize(gt.shape().pixels());
      for (std::size_t i = 0; i < domain.size(); ++i) {
        domain[i] = static_cast<LinearIndex>(i);
      }
      break;
  }
  std::sort(domain.begin(), domain.end());
  for (LinearIndex idx : domain) FromLinear(idx, gt.shape());
  return domain;
}

ThematicMap Render(const GroundTruth& gt, const SplitIndices& splits,
                   const PredictionMap& predictions, MapMode mode) {
  ThematicMap map{gt.rows(), gt.cols(), mode,
                  std::vector<std::uint16_t>(gt.shape().pixels(), 0)};
  std::vector<LinearIndex> missing;
  for (LinearIndex idx : MapDomain(gt, splits, mode)) {
    const auto it = predictions.find(idx);
    if (it == predictions.end()) {
      missing.push_back(idx);
      continue;
    }
    map.indices[idx] = it->second;
  }
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << missing.size() << " pixel(s) of mode " << MapModeName(mode)
        << " have no prediction:";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) {
      msg << ' ' << missing[i];
    }
    if (missing.size() > 20) msg << " ...";
    throw Error(ErrorCode::kCoverage, msg.str());
  }
  return map;
}

ThematicMap RenderTruth(const GroundTruth& gt, const SplitIndices& splits,
                        MapMode mode) {
  PredictionMap truth;
  const auto labels = gt.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    truth.emplace(static_cast<LinearIndex>(i), labels[i]);
  }
  return Render(gt, splits, truth, mode);
}

std::string EncodePpm(const ThematicMap& map, const Palette& palette) {
  std::string out = "P6\n" + std::to_string(map.cols) + " " +
                    std::to_string(map.rows) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + map.indices.size() * 3);
  for (std::size_t i = 0; i < map.indices.size(); ++i) {
    const std::uint16_t idx = map.indices[i];
    if (idx >= palette.colors.size()) {
      throw Error(ErrorCode::kConfig,
                  "label " + std::to_string(idx) + " has no palette color (" +
                      std::to_string(palette.colors.size()) + " entries)");
    }
    const Rgb& c = palette.colors[idx];
    out[header + 3 * i] = static_cast<char>(c[0]);
    out[header + 3 * i + 1] = static_cast<char>(c[1]);
    out[header + 3 * i + 2] = static_cast<char>(c[2]);
  }
  return out;
}

void WritePpm(const ThematicMap& map, const Palette& palette,
              const std::filesystem::path& path) {
  internal::WriteFileBytes(path, EncodePpm(map, palette));
}

}  // namespace hsidj
