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
#include <map>
#include <vector>

#include <gtest/gtest.h>

#include "hsidj/error.h"
#include "hsidj/ingest.h"
#include "hsidj/splitting.h"
#include "test_util.h"

namespace hsidj {
namespace {

using testing::CodeOf;

SynthConfig SmallConfig() {
  SynthConfig cfg;
  cfg.rows = 16;
  cfg.cols = 16;
  cfg.bands = 4;
  cfg.num_classes = 2;
  cfg.blob_count = 4;
  cfg.seed = 1;
  return cfg;
}

TEST(SynthTest, Deterministic) {
  const auto a = SynthDataset(SmallConfig());
  const auto b = SynthDataset(SmallConfig());
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second, b.second);
  SynthConfig other = SmallConfig();
  other.seed = 2;
  EXPECT_FALSE(SynthDataset(other).first == a.first);
}

TEST(SynthTest, HistogramMatchesDirectCount) {
  const GroundTruth gt = SynthDataset(SmallConfig()).second;
  std::map<Label, std::size_t> counts;
  for (std::size_t r = 0; r < gt.rows(); ++r) {
    for (std::size_t c = 0; c < gt.cols(); ++c) {
      if (gt.at(r, c) != 0) ++counts[gt.at(r, c)];
    }
  }
  std::vector<ClassCount> expected;
  for (const auto& [label, n] : counts) expected.push_back({label, n});
  EXPECT_EQ(ClassHistogram(gt), expected);
}

TEST(SynthTest, LayoutInvariants) {
  SynthConfig cfg;
  cfg.num_classes = 5;
  cfg.blob_count = 9;
  cfg.bands = 6;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    cfg.seed = seed;
    const GroundTruth gt = SynthDataset(cfg).second;
    std::vector<bool> seen(cfg.num_classes + 1, false);
    for (std::size_t r = 0; r < gt.rows(); ++r) {
      for (std::size_t c = 0; c < gt.cols(); ++c) {
        const bool border =
            r == 0 || c == 0 || r + 1 == gt.rows() || c + 1 == gt.cols();
        const Label l = gt.at(r, c);
        if (border) {
          EXPECT_EQ(l, kBackground);
        } else {
          ASSERT_GE(l, 1);
          ASSERT_LE(l, cfg.num_classes);
          seen[l] = true;
        }
      }
    }
    for (std::size_t c = 1; c <= cfg.num_classes; ++c) EXPECT_TRUE(seen[c]);
  }
}

TEST(SynthTest, NoiselessPixelsEqualClassMeans) {
  SynthConfig cfg = SmallConfig();
  cfg.noise_sigma = 0.0;
  const auto [cube, gt] = SynthDataset(cfg);
  for (LinearIndex i = 0; i < gt.shape().pixels(); ++i) {
    const std::vector<double> mean = SynthClassMean(cfg, gt.at(i));
    const auto px = cube.pixel(i);
    for (std::size_t b = 0; b < cfg.bands; ++b) {
      ASSERT_EQ(px[b], static_cast<float>(mean[b]));
    }
  }
}

TEST(SynthTest, ClassMeansAreEquidistant) {
  SynthConfig cfg;
  cfg.bands = 8;
  cfg.num_classes = 5;
  cfg.class_separation = 2.5;
  for (Label a = 1; a <= 5; ++a) {
    for (Label b = a + 1; b <= 5; ++b) {
      const auto ma = SynthClassMean(cfg, a);
      const auto mb = SynthClassMean(cfg, b);
      double d2 = 0;
      for (std::size_t i = 0; i < cfg.bands; ++i) {
        d2 += (ma[i] - mb[i]) * (ma[i] - mb[i]);
      }
      EXPECT_NEAR(std::sqrt(d2), 2.5, 1e-12);
    }
  }
}

TEST(SynthTest, NoiseHasRequestedSpread) {
  SynthConfig cfg;
  cfg.noise_sigma = 0.3;
  cfg.seed = 4;
  const auto [cube, gt] = SynthDataset(cfg);
  double sum = 0, sq = 0;
  std::size_t n = 0;
  for (LinearIndex i = 0; i < gt.shape().pixels(); ++i) {
    const auto mean = SynthClassMean(cfg, gt.at(i));
    const auto px = cube.pixel(i);
    for (std::size_t b = 0; b < cfg.bands; ++b) {
      const double r = px[b] - mean[b];
      sum += r;
      sq += r * r;
      ++n;
    }
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(std::sqrt(sq / n), 0.3, 0.01);
}

TEST(SynthTest, RejectsUnsatisfiableConfigs) {
  auto with = [](auto edit) {
    SynthConfig cfg;
    edit(cfg);
    return CodeOf([&] { SynthDataset(cfg); });
  };
  EXPECT_EQ(with([](SynthConfig& c) { c.rows = 2; }), ErrorCode::kConfig);
  EXPECT_EQ(with([](SynthConfig& c) { c.num_classes = 1; }), ErrorCode::kConfig);
  EXPECT_EQ(with([](SynthConfig& c) { c.blob_count = 3; }), ErrorCode::kConfig);
  EXPECT_EQ(with([](SynthConfig& c) { c.bands = 3; }), ErrorCode::kConfig);
  EXPECT_EQ(with([](SynthConfig& c) { c.noise_sigma = -1; }), ErrorCode::kConfig);
  EXPECT_EQ(with([](SynthConfig& c) {
              c.rows = 4;
              c.cols = 4;
            }),
            ErrorCode::kConfig);
}

}  // namespace
}  // namespace hsidj
