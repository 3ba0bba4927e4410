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

#include <algorithm>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "hsidj/error.h"
#include "hsidj/ingest.h"
#include "hsidj/patching.h"
#include "hsidj/splitting.h"
#include "test_util.h"

namespace hsidj {
namespace {

using testing::BruteForcePatch;
using testing::CodeOf;

GroundTruth Labels(std::size_t rows, std::size_t cols) {
  std::vector<Label> labels(rows * cols);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i % 3;
  return GroundTruth(rows, cols, std::move(labels));
}

HsiCube Ramp(std::size_t rows, std::size_t cols, std::size_t bands) {
  return testing::CubeFromFn(rows, cols, bands, [](auto r, auto c, auto b) {
    return 1.0 + static_cast<double>(r * 1000 + c * 10 + b);
  });
}

TEST(ExtractPatchTest, InteriorWindow) {
  const HsiCube cube(3, 3, 1, std::vector<float>(9, 1.0f));
  const PatchRecord p =
      ExtractPatch(cube, Labels(3, 3), 1, 1, PatchSpec::FromWindow(3));
  EXPECT_EQ(p.values, std::vector<float>(9, 1.0f));
  EXPECT_EQ(p.center, (PixelCoord{1, 1}));
}

TEST(ExtractPatchTest, CornerPadding) {
  const HsiCube cube(3, 3, 1, std::vector<float>(9, 1.0f));
  const PatchRecord p =
      ExtractPatch(cube, Labels(3, 3), 0, 0, PatchSpec::FromWindow(3));
  EXPECT_EQ(std::count(p.values.begin(), p.values.end(), 0.0f), 5);
  for (std::size_t d = 0; d < 3; ++d) {
    EXPECT_EQ(p.at(0, d, 0), 0.0f);
    EXPECT_EQ(p.at(d, 0, 0), 0.0f);
  }
}

TEST(ExtractPatchTest, EvenWindowLargerThanRaster) {
  const HsiCube cube = Ramp(4, 4, 2);
  const PatchRecord p =
      ExtractPatch(cube, Labels(4, 4), 0, 0, PatchSpec::FromWindow(8));
  ASSERT_EQ(p.values.size(), 8u * 8 * 2);
  std::size_t in_raster = 0, zeros = 0;
  for (std::size_t dr = 0; dr < 8; ++dr) {
    for (std::size_t dc = 0; dc < 8; ++dc) {
      // Cell (dr, dc) is original (dr - 4, dc - 4).
      const bool inside = dr >= 4 && dc >= 4;
      for (std::size_t b = 0; b < 2; ++b) {
        if (inside) {
          EXPECT_EQ(p.at(dr, dc, b), cube.at(dr - 4, dc - 4, b));
        } else {
          EXPECT_EQ(p.at(dr, dc, b), 0.0f);
        }
      }
      inside ? ++in_raster : ++zeros;
    }
  }
  EXPECT_EQ(in_raster, 16u);
  EXPECT_EQ(zeros, 48u);
}

TEST(ExtractPatchTest, MatchesPaddedCopyOracle) {
  for (std::size_t rows : {1, 2, 5, 9}) {
    for (std::size_t cols : {1, 3, 6}) {
      const HsiCube cube = Ramp(rows, cols, 2);
      const GroundTruth gt = Labels(rows, cols);
      for (std::size_t ws : {1, 2, 3, 4, 7, 8, 11}) {
        const PatchSpec spec = PatchSpec::FromWindow(ws);
        for (std::size_t r = 0; r < rows; ++r) {
          for (std::size_t c = 0; c < cols; ++c) {
            ASSERT_EQ(ExtractPatch(cube, gt, r, c, spec).values,
                      BruteForcePatch(cube, r, c, ws))
                << rows << "x" << cols << " ws=" << ws << " at " << r << ","
                << c;
          }
        }
      }
    }
  }
}

TEST(ExtractPatchTest, Errors) {
  const HsiCube cube = Ramp(3, 3, 1);
  EXPECT_EQ(CodeOf([&] {
              ExtractPatch(cube, Labels(3, 3), 3, 0, PatchSpec::FromWindow(3));
            }),
            ErrorCode::kBounds);
  EXPECT_EQ(CodeOf([&] {
              ExtractPatch(cube, Labels(3, 4), 0, 0, PatchSpec::FromWindow(3));
            }),
            ErrorCode::kConfig);
}

TEST(PatchStreamTest, OrderAndCount) {
  const HsiCube cube = Ramp(2, 2, 1);
  PatchStream stream(cube, Labels(2, 2), PatchSpec::FromWindow(5));
  std::vector<PixelCoord> centers;
  while (stream.Next()) centers.push_back(stream.current().center);
  EXPECT_EQ(centers, (std::vector<PixelCoord>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
}

TEST(PatchStreamTest, IndianPinesShapeCount) {
  const HsiCube cube(145, 145, 1, std::vector<float>(145 * 145, 0.5f));
  const GroundTruth gt(145, 145, std::vector<Label>(145 * 145, 1));
  PatchStream stream(cube, gt, PatchSpec::FromWindow(8));
  std::size_t n = 0;
  while (stream.Next()) ++n;
  EXPECT_EQ(n, 21025u);
}

TEST(PatchStreamTest, EqualsExtractPatch) {
  const HsiCube cube = Ramp(7, 5, 3);
  const GroundTruth gt = Labels(7, 5);
  for (std::size_t ws : {1, 3, 4, 8, 9}) {
    const PatchSpec spec = PatchSpec::FromWindow(ws);
    PatchStream stream(cube, gt, spec);
    std::size_t n = 0;
    while (stream.Next()) {
      const PatchRecord& rec = stream.current();
      ASSERT_EQ(rec, ExtractPatch(cube, gt, rec.center.row, rec.center.col, spec));
      ++n;
    }
    EXPECT_EQ(n, 35u);
  }
}

TEST(PatchStreamTest, RowRangesConcatenate) {
  const HsiCube cube = Ramp(9, 4, 2);
  const GroundTruth gt = Labels(9, 4);
  const PatchSpec spec = PatchSpec::FromWindow(4);
  std::vector<PatchRecord> whole, pieces;
  PatchStream all(cube, gt, spec);
  while (all.Next()) whole.push_back(all.current());
  for (auto [begin, end] : {std::pair{0, 2}, std::pair{2, 7}, std::pair{7, 9}}) {
    PatchStream part(cube, gt, spec, begin, end);
    while (part.Next()) pieces.push_back(part.current());
  }
  EXPECT_EQ(whole, pieces);
}

TEST(PatchStreamTest, ScratchDoesNotGrowWithRows) {
  const PatchSpec spec = PatchSpec::FromWindow(8);
  const HsiCube short_cube = Ramp(10, 20, 4);
  const HsiCube tall_cube = Ramp(200, 20, 4);
  const GroundTruth short_gt = Labels(10, 20);
  const GroundTruth tall_gt = Labels(200, 20);
  PatchStream a(short_cube, short_gt, spec);
  PatchStream b(tall_cube, tall_gt, spec);
  while (a.Next()) {
  }
  while (b.Next()) {
  }
  EXPECT_EQ(a.scratch_floats(), b.scratch_floats());
  EXPECT_LE(a.scratch_floats(), 8u * (20 + 7) * 4 + 8 * 8 * 4);
}

TEST(GatherPatchesTest, EmptyAndAll) {
  const HsiCube cube = Ramp(4, 3, 2);
  const GroundTruth gt = Labels(4, 3);
  const PatchSpec spec = PatchSpec::FromWindow(3);
  EXPECT_TRUE(GatherPatches(cube, gt, {}, spec).records.empty());

  std::vector<LinearIndex> all(12);
  std::iota(all.begin(), all.end(), 0u);
  EXPECT_EQ(GatherPatches(cube, gt, all, spec).records,
            CollectPatches(cube, gt, spec).records);
}

TEST(GatherPatchesTest, Errors) {
  const HsiCube cube = Ramp(4, 3, 2);
  const GroundTruth gt = Labels(4, 3);
  const PatchSpec spec = PatchSpec::FromWindow(3);
  const std::vector<LinearIndex> dup = {1, 5, 1};
  EXPECT_EQ(CodeOf([&] { GatherPatches(cube, gt, dup, spec); }),
            ErrorCode::kDuplicateIndex);
  const std::vector<LinearIndex> bad = {12};
  EXPECT_EQ(CodeOf([&] { GatherPatches(cube, gt, bad, spec); }),
            ErrorCode::kBounds);
}

TEST(GatherPatchesTest, TrainingPatchesAreLabeled) {
  SynthConfig cfg;
  cfg.seed = 2;
  const auto [cube, gt] = SynthDataset(cfg);
  const SplitIndices splits = DisjointSplit(gt, SplitConfig{0.7, 0.5, 2});
  const std::vector<LinearIndex> train = splits.AllTrain();
  const PatchSet set = GatherPatches(cube, gt, train, PatchSpec::FromWindow(8));
  ASSERT_EQ(set.records.size(), train.size());
  for (const PatchRecord& r : set.records) EXPECT_NE(r.label, kBackground);
}

TEST(FlattenPatchTest, Examples) {
  const HsiCube cube = Ramp(3, 3, 4);
  const GroundTruth gt = Labels(3, 3);
  const auto spec1 = PatchSpec::FromWindow(1);
  const auto v = FlattenPatch(ExtractPatch(cube, gt, 1, 2, spec1));
  const auto s = SpectralVector(cube, ToLinear(1, 2, cube.shape()));
  EXPECT_EQ(v, std::vector<float>(s.begin(), s.end()));

  const HsiCube zeros(2, 2, 3, std::vector<float>(12, 0.0f));
  const auto z = FlattenPatch(
      ExtractPatch(zeros, Labels(2, 2), 0, 0, PatchSpec::FromWindow(2)));
  EXPECT_EQ(z, std::vector<float>(12, 0.0f));

  const HsiCube grid(2, 2, 1, {1, 2, 3, 4});
  EXPECT_EQ(FlattenPatch(ExtractPatch(grid, Labels(2, 2), 1, 1,
                                      PatchSpec::FromWindow(2))),
            (std::vector<float>{1, 2, 3, 4}));

  PatchRecord p;
  p.window = 2;
  p.bands = 1;
  p.values = {1, 2, 3, 4};
  EXPECT_EQ(FlattenPatch(p), (std::vector<float>{1, 2, 3, 4}));
}

}  // namespace
}  // namespace hsidj
