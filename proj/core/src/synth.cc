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

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hsidj/error.h"
#include "hsidj/ingest.h"
#include "hsidj/random.h"

namespace hsidj {

void SynthConfig::Validate() const {
  auto fail = [](const std::string& why) {
    throw Error(ErrorCode::kConfig, "synthetic scene: " + why);
  };
  if (rows < 3 || cols < 3) fail("rows and cols must be >= 3");
  if (bands == 0) fail("bands must be >= 1");
  if (num_classes < 2) fail("num_classes must be >= 2");
  if (num_classes > std::numeric_limits<Label>::max()) {
    fail("num_classes exceeds the label range");
  }
  if (num_classes > blob_count) fail("num_classes must be <= blob_count");
  if (bands < num_classes) {
    fail("bands (" + std::to_string(bands) + ") must be >= num_classes (" +
         std::to_string(num_classes) + ") to place equidistant class means");
  }
  if (!(class_separation > 0) || !std::isfinite(class_separation)) {
    fail("class_separation must be > 0");
  }
  if (!(noise_sigma >= 0) || !std::isfinite(noise_sigma)) {
    fail("noise_sigma must be >= 0");
  }
  if ((rows - 2) * (cols - 2) < blob_count) {
    fail("raster interior has " + std::to_string((rows - 2) * (cols - 2)) +
         " pixels, fewer than blob_count " + std::to_string(blob_count));
  }
}

// Class c sits at base + (separation / sqrt 2) * e_{c-1}, so every pair of
// class means is exactly `class_separation` apart.
std::vector<double> SynthClassMean(const SynthConfig& cfg, Label label) {
  std::vector<double> mean(cfg.bands, 1.0);
  if (label != kBackground) {
    mean[label - 1] += cfg.class_separation / std::sqrt(2.0);
  }
  return mean;
}

std::pair<HsiCube, GroundTruth> SynthDataset(const SynthConfig& cfg) {
  cfg.Validate();
  Rng rng(cfg.seed);
  const std::size_t inner_cols = cfg.cols - 2;
  const std::size_t interior = (cfg.rows - 2) * inner_cols;

  // Partial Fisher-Yates over interior positions picks distinct sites.
  std::vector<std::size_t> positions(interior);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  struct Site {
    long row;
    long col;
    Label label;
  };
  std::vector<Site> sites;
  sites.reserve(cfg.blob_count);
  for (std::size_t i = 0; i < cfg.blob_count; ++i) {
    const std::size_t j = i + rng.UniformBelow(interior - i);
    std::swap(positions[i], positions[j]);
    const Label label =
        i < cfg.num_classes
            ? static_cast<Label>(i + 1)
            : static_cast<Label>(1 + rng.UniformBelow(cfg.num_classes));
    sites.push_back({static_cast<long>(positions[i] / inner_cols + 1),
                     static_cast<long>(positions[i] % inner_cols + 1), label});
  }

  std::vector<Label> labels(cfg.rows * cfg.cols, kBackground);
  for (std::size_t r = 1; r + 1 < cfg.rows; ++r) {
    for (std::size_t c = 1; c + 1 < cfg.cols; ++c) {
      long best = std::numeric_limits<long>::max();
      Label label = kBackground;
      for (const Site& s : sites) {
        const long dr = static_cast<long>(r) - s.row;
        const long dc = static_cast<long>(c) - s.col;
        const long d2 = dr * dr + dc * dc;
        if (d2 < best) {
          best = d2;
          label = s.label;
        }
      }
      labels[r * cfg.cols + c] = label;
    }
  }

  std::vector<std::vector<double>> means(cfg.num_classes + 1);
  for (std::size_t c = 0; c <= cfg.num_classes; ++c) {
    means[c] = SynthClassMean(cfg, static_cast<Label>(c));
  }
  std::vector<float> values(cfg.rows * cfg.cols * cfg.bands);
  std::size_t out = 0;
  for (Label label : labels) {
    const std::vector<double>& mean = means[label];
    for (std::size_t b = 0; b < cfg.bands; ++b) {
      const double noise = rng.StandardNormal();
      values[out++] = static_cast<float>(mean[b] + cfg.noise_sigma * noise);
    }
  }
  return {HsiCube(cfg.rows, cfg.cols, cfg.bands, std::move(values)),
          GroundTruth(cfg.rows, cfg.cols, std::move(labels))};
}

}  // namespace hsidj
