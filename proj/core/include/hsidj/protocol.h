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

#ifndef HSIDJ_PROTOCOL_H_
#define HSIDJ_PROTOCOL_H_

// The three-set evaluation protocol: a model fitted on the training indices
// is scored on the disjoint validation set, the disjoint test set, and every
// labeled pixel of the scene (training pixels included). Also hosts the
// explicit overlap harness that re-injects training pixels into the test set
// to measure how much memorization inflates the scores.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsidj/classifiers.h"
#include "hsidj/metrics.h"
#include "hsidj/raster.h"
#include "hsidj/softmax.h"
#include "hsidj/splitting.h"

namespace hsidj {

enum class ModelKind { kCentroid, kKnn, kSoftmax };

std::string_view ModelKindName(ModelKind kind);
ModelKind ParseModelKind(std::string_view name);

struct ModelOptions {
  ModelKind kind = ModelKind::kKnn;
  FeatureSpec features;
  std::size_t k = 1;
  SoftmaxTrainOptions softmax;
};

struct FittedModel {
  std::unique_ptr<Classifier> model;
  std::vector<EpochStats> curve;  // softmax only
  std::size_t best_epoch = 0;     // softmax only
};

// Fits on splits.AllTrain() only (softmax also watches splits.AllVal()).
FittedModel FitOnSplits(const ModelOptions& options, const HsiCube& cube,
                        const GroundTruth& gt, const SplitIndices& splits,
                        std::size_t threads = 1);

std::vector<Label> PredictIndices(const Classifier& model, const HsiCube& cube,
                                  std::span<const LinearIndex> indices,
                                  std::size_t threads = 1);

struct SetEvaluation {
  EvalReport report;
  ConfusionMatrix confusion{std::vector<Label>{}};
  std::vector<LinearIndex> indices;
  std::vector<Label> predictions;  // parallel to indices
};

// Predicts every index (timed: feature extraction + prediction) and scores
// against gt over `classes`.
SetEvaluation EvaluateSet(const Classifier& model, const HsiCube& cube,
                          const GroundTruth& gt,
                          std::span<const LinearIndex> indices,
                          const std::vector<Label>& classes,
                          std::string set_name, std::size_t threads = 1);

struct ProtocolResult {
  SetEvaluation train_part;  // the training pixels alone
  SetEvaluation val;
  SetEvaluation test;
  SetEvaluation full;  // every labeled pixel, predicted in its own pass
};

// Throws kConfig when the model's patch window disagrees with `spec`.
ProtocolResult EvaluateProtocol(const Classifier& model, const HsiCube& cube,
                                const GroundTruth& gt,
                                const SplitIndices& splits,
                                const PatchSpec& spec, std::size_t threads = 1);

// All labeled pixels in row-major order.
std::vector<LinearIndex> LabeledIndices(const GroundTruth& gt);

struct OverlapTestSet {
  std::vector<LinearIndex> indices;  // honest test indices, then reused ones
  std::size_t honest = 0;
  std::size_t reused = 0;
};

// Test set re-sampled to include training pixels: every test index plus
// round(reuse_fraction * |train|) training indices drawn with Rng(seed).
OverlapTestSet MakeOverlapTestSet(const SplitIndices& splits,
                                  double reuse_fraction, std::uint64_t seed);

struct OverlapEvaluation {
  SetEvaluation combined;
  EvalReport honest_part;
  EvalReport reused_part;
};

OverlapEvaluation EvaluateOverlap(const Classifier& model, const HsiCube& cube,
                                  const GroundTruth& gt,
                                  const SplitIndices& splits,
                                  double reuse_fraction, std::uint64_t seed,
                                  std::size_t threads = 1);

}  // namespace hsidj

#endif  // HSIDJ_PROTOCOL_H_
