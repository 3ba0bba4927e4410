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

#include "hsidj/protocol.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "hsidj/error.h"
#include "hsidj/features.h"
#include "hsidj/parallel.h"
#include "hsidj/random.h"

namespace hsidj {
namespace {

std::vector<Label> LabelsOf(const GroundTruth& gt,
                            std::span<const LinearIndex> indices) {
  std::vector<Label> out;
  out.reserve(indices.size());
  for (LinearIndex i : indices) out.push_back(gt.at(i));
  return out;
}

}  // namespace

std::string_view ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kCentroid: return "centroid";
    case ModelKind::kKnn: return "knn";
    case ModelKind::kSoftmax: return "softmax";
  }
  return "knn";
}

ModelKind ParseModelKind(std::string_view name) {
  if (name == "centroid") return ModelKind::kCentroid;
  if (name == "knn") return ModelKind::kKnn;
  if (name == "softmax") return ModelKind::kSoftmax;
  throw Error(ErrorCode::kConfig, "unknown model '" + std::string(name) + "'");
}

FittedModel FitOnSplits(const ModelOptions& options, const HsiCube& cube,
                        const GroundTruth& gt, const SplitIndices& splits,
                        std::size_t threads) {
  RequireSameShape(cube, gt);
  const std::vector<LinearIndex> train = splits.AllTrain();
  FeatureMatrix features = BuildFeatures(cube, train, options.features, threads);
  std::vector<Label> labels = LabelsOf(gt, train);
  FittedModel fitted;
  switch (options.kind) {
    case ModelKind::kCentroid: {
      const std::vector<Label> classes = splits.Labels();
      fitted.model = std::make_unique<CentroidClassifier>(
          CentroidClassifier::Fit(features, labels, options.features, classes));
      break;
    }
    case ModelKind::kKnn:
      fitted.model = std::make_unique<KnnClassifier>(KnnClassifier::Fit(
          std::move(features), std::move(labels), options.k, options.features));
      break;
    case ModelKind::kSoftmax: {
      const std::vector<LinearIndex> val = splits.AllVal();
      const FeatureMatrix val_features =
          BuildFeatures(cube, val, options.features, threads);
      const std::vector<Label> val_labels = LabelsOf(gt, val);
      SoftmaxTrainResult result =
          TrainSoftmax(features, labels, val_features, val_labels,
                       options.features, options.softmax);
      fitted.curve = std::move(result.curve);
      fitted.best_epoch = result.best_epoch;
      fitted.model = std::make_unique<SoftmaxClassifier>(std::move(result.model));
      break;
    }
  }
  return fitted;
}

std::vector<Label> PredictIndices(const Classifier& model, const HsiCube& cube,
                                  std::span<const LinearIndex> indices,
                                  std::size_t threads) {
  const FeatureSpec& spec = model.features();
  const std::size_t dim = spec.Dim(cube.bands());
  std::vector<Label> out(indices.size());
  ParallelFor(indices.size(), threads, [&](std::size_t begin, std::size_t end) {
    std::vector<float> x(dim);
    for (std::size_t i = begin; i < end; ++i) {
      ExtractFeature(cube, indices[i], spec, x);
      out[i] = model.Predict(x);
    }
  });
  return out;
}

SetEvaluation EvaluateSet(const Classifier& model, const HsiCube& cube,
                          const GroundTruth& gt,
                          std::span<const LinearIndex> indices,
                          const std::vector<Label>& classes,
                          std::string set_name, std::size_t threads) {
  SetEvaluation eval;
  eval.indices.assign(indices.begin(), indices.end());
  const auto start = std::chrono::steady_clock::now();
  eval.predictions = PredictIndices(model, cube, indices, threads);
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  const std::vector<Label> truth = LabelsOf(gt, indices);
  eval.confusion = Confusion(truth, eval.predictions, classes);
  eval.report = ComputeMetrics(eval.confusion);
  eval.report.set_name = std::move(set_name);
  eval.report.wall_time_seconds = elapsed.count();
  return eval;
}

std::vector<LinearIndex> LabeledIndices(const GroundTruth& gt) {
  std::vector<LinearIndex> out;
  const auto labels = gt.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != kBackground) out.push_back(static_cast<LinearIndex>(i));
  }
  return out;
}

ProtocolResult EvaluateProtocol(const Classifier& model, const HsiCube& cube,
                                const GroundTruth& gt,
                                const SplitIndices& splits,
                                const PatchSpec& spec, std::size_t threads) {
  RequireSameShape(cube, gt);
  const FeatureSpec& features = model.features();
  if (features.kind == FeatureKind::kPatch && features.window != spec.window) {
    throw Error(ErrorCode::kConfig,
                "model was fitted on " + std::to_string(features.window) +
                    "-pixel windows but the protocol uses " +
                    std::to_string(spec.window));
  }
  const std::vector<Label> classes = splits.Labels();
  ProtocolResult result;
  result.train_part = EvaluateSet(model, cube, gt, splits.AllTrain(), classes,
                                  "train", threads);
  result.val =
      EvaluateSet(model, cube, gt, splits.AllVal(), classes, "val", threads);
  result.test =
      EvaluateSet(model, cube, gt, splits.AllTest(), classes, "test", threads);
  result.full = EvaluateSet(model, cube, gt, LabeledIndices(gt), classes,
                            "full", threads);
  return result;
}

OverlapTestSet MakeOverlapTestSet(const SplitIndices& splits,
                                  double reuse_fraction, std::uint64_t seed) {
  if (!(reuse_fraction > 0.0 && reuse_fraction <= 1.0)) {
    throw Error(ErrorCode::kConfig, "reuse fraction must lie in (0, 1]");
  }
  OverlapTestSet out;
  out.indices = splits.AllTest();
  out.honest = out.indices.size();
  std::vector<LinearIndex> train = splits.AllTrain();
  Rng rng(seed);
  Shuffle(std::span<LinearIndex>(train), rng);
  const auto take = static_cast<std::size_t>(
      std::llround(reuse_fraction * static_cast<double>(train.size())));
  out.reused = std::max<std::size_t>(1, std::min(take, train.size()));
  out.indices.insert(out.indices.end(), train.begin(),
                     train.begin() + static_cast<std::ptrdiff_t>(out.reused));
  return out;
}

OverlapEvaluation EvaluateOverlap(const Classifier& model, const HsiCube& cube,
                                  const GroundTruth& gt,
                                  const SplitIndices& splits,
                                  double reuse_fraction, std::uint64_t seed,
                                  std::size_t threads) {
  const OverlapTestSet set = MakeOverlapTestSet(splits, reuse_fraction, seed);
  const std::vector<Label> classes = splits.Labels();
  OverlapEvaluation out;
  out.combined = EvaluateSet(model, cube, gt, set.indices, classes,
                             "test+reused-train", threads);
  ConfusionMatrix honest(classes);
  ConfusionMatrix reused(classes);
  for (std::size_t i = 0; i < set.indices.size(); ++i) {
    ConfusionMatrix& cm = i < set.honest ? honest : reused;
    cm.AddLabels(gt.at(set.indices[i]), out.combined.predictions[i]);
  }
  out.honest_part = ComputeMetrics(honest);
  out.honest_part.set_name = "test";
  out.reused_part = ComputeMetrics(reused);
  out.reused_part.set_name = "reused-train";
  return out;
}

}  // namespace hsidj
