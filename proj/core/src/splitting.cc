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

#include "hsidj/splitting.h"

#include <cmath>
#include <map>
#include <string>

#include "hsidj/error.h"
#include "hsidj/random.h"

namespace hsidj {
namespace {

std::size_t CeilSnapped(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(x));
}

std::vector<LinearIndex> Concat(const std::vector<ClassSplit>& classes,
                                std::vector<LinearIndex> ClassSplit::*member) {
  std::vector<LinearIndex> out;
  for (const ClassSplit& c : classes) {
    const auto& v = c.*member;
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

}  // namespace

std::vector<ClassCount> ClassHistogram(const GroundTruth& gt) {
  std::map<Label, std::size_t> counts;
  for (Label v : gt.labels()) {
    if (v != kBackground) ++counts[v];
  }
  if (counts.empty()) {
    throw Error(ErrorCode::kEmptyGroundTruth,
                "ground truth has no labeled pixels");
  }
  std::vector<ClassCount> out;
  out.reserve(counts.size());
  for (const auto& [label, count] : counts) out.push_back({label, count});
  return out;
}

SplitCounts ComputeSplitCounts(std::size_t n, double test_ratio,
                               double val_ratio, Label label) {
  SplitConfig{test_ratio, val_ratio, 0}.Validate();
  SplitCounts counts;
  counts.test = CeilSnapped(static_cast<double>(n) * test_ratio);
  const std::size_t rest = n - std::min(n, counts.test);
  counts.val = CeilSnapped(static_cast<double>(rest) * val_ratio);
  if (counts.test >= n || counts.val >= rest) {
    throw Error(ErrorCode::kClassTooSmall,
                "class " + std::to_string(label) + " has " +
                    std::to_string(n) +
                    " pixels, too few for non-empty train/val/test sets");
  }
  counts.train = rest - counts.val;
  if (counts.val == 0 || counts.test == 0) {
    throw Error(ErrorCode::kClassTooSmall,
                "class " + std::to_string(label) + " has " +
                    std::to_string(n) +
                    " pixels, too few for non-empty train/val/test sets");
  }
  return counts;
}

std::vector<LinearIndex> SplitIndices::AllTrain() const {
  return Concat(classes, &ClassSplit::train);
}
std::vector<LinearIndex> SplitIndices::AllVal() const {
  return Concat(classes, &ClassSplit::val);
}
std::vector<LinearIndex> SplitIndices::AllTest() const {
  return Concat(classes, &ClassSplit::test);
}
std::vector<Label> SplitIndices::Labels() const {
  std::vector<Label> out;
  for (const ClassSplit& c : classes) out.push_back(c.label);
  return out;
}

std::uint64_t GroundTruthFingerprint(const GroundTruth& gt) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto feed = [&hash](std::uint8_t byte) {
    hash ^= byte;
    hash *= 0x100000001b3ULL;
  };
  for (std::uint32_t dim : {static_cast<std::uint32_t>(gt.rows()),
                            static_cast<std::uint32_t>(gt.cols())}) {
    for (int i = 0; i < 4; ++i) feed(static_cast<std::uint8_t>(dim >> (8 * i)));
  }
  for (Label v : gt.labels()) {
    feed(static_cast<std::uint8_t>(v & 0xff));
    feed(static_cast<std::uint8_t>(v >> 8));
  }
  return hash;
}

SplitIndices DisjointSplit(const GroundTruth& gt, const SplitConfig& cfg) {
  cfg.Validate();
  const std::vector<ClassCount> histogram = ClassHistogram(gt);

  // Validate every class before drawing anything.
  std::vector<SplitCounts> counts;
  counts.reserve(histogram.size());
  for (const ClassCount& c : histogram) {
    counts.push_back(
        ComputeSplitCounts(c.count, cfg.test_ratio, cfg.val_ratio, c.label));
  }

  std::map<Label, std::vector<LinearIndex>> members;
  const auto labels = gt.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != kBackground) {
      members[labels[i]].push_back(static_cast<LinearIndex>(i));
    }
  }

  SplitIndices out;
  out.provenance = {cfg.seed,
                    cfg.test_ratio,
                    cfg.val_ratio,
                    GroundTruthFingerprint(gt),
                    gt.rows(),
                    gt.cols()};
  Rng rng(cfg.seed);
  for (std::size_t k = 0; k < histogram.size(); ++k) {
    std::vector<LinearIndex>& idx = members[histogram[k].label];
    Shuffle(std::span<LinearIndex>(idx), rng);
    const SplitCounts& n = counts[k];
    ClassSplit split;
    split.label = histogram[k].label;
    split.test.assign(idx.begin(), idx.begin() + n.test);
    split.val.assign(idx.begin() + n.test, idx.begin() + n.test + n.val);
    split.train.assign(idx.begin() + n.test + n.val, idx.end());
    out.classes.push_back(std::move(split));
  }
  return out;
}

}  // namespace hsidj
