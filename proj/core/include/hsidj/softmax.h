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

#ifndef HSIDJ_SOFTMAX_H_
#define HSIDJ_SOFTMAX_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsidj/classifiers.h"
#include "hsidj/features.h"

namespace hsidj {

// Linear softmax head: z = W x + b, W is classes x dim row-major.
struct SoftmaxParams {
  std::size_t classes = 0;
  std::size_t dim = 0;
  std::vector<double> weights;
  std::vector<double> bias;

  static SoftmaxParams Zeros(std::size_t classes, std::size_t dim);
  friend bool operator==(const SoftmaxParams&, const SoftmaxParams&) = default;
};

// Training rows already in model space (standardized), with class indices
// in [0, classes).
struct SoftmaxBatch {
  std::size_t rows = 0;
  std::size_t dim = 0;
  std::vector<double> x;
  std::vector<std::size_t> y;
};

// p_i = exp(z_i - max z) / sum_j exp(z_j - max z).
std::vector<double> SoftmaxForward(const SoftmaxParams& params,
                                   std::span<const double> x);

struct SoftmaxLossGrad {
  double loss = 0.0;       // data loss + penalty
  double data_loss = 0.0;  // mean cross-entropy
  SoftmaxParams grad;
};

// loss = mean_i(-log p_{y_i}) + lambda / 2 * ||W||^2 (bias unpenalized),
// with the exact gradient of that objective.
SoftmaxLossGrad ComputeSoftmaxLossGrad(const SoftmaxParams& params,
                                       const SoftmaxBatch& batch,
                                       double lambda);

class SoftmaxClassifier final : public Classifier {
 public:
  SoftmaxClassifier() = default;
  SoftmaxClassifier(SoftmaxParams params, std::vector<Label> classes,
                    Standardizer standardizer, FeatureSpec spec);

  std::string_view kind() const override { return "softmax"; }
  const FeatureSpec& features() const override { return spec_; }
  // Argmax probability; ties go to the smaller label.
  Label Predict(std::span<const float> x) const override;

  // Class probabilities for a raw (unstandardized) feature vector, in the
  // order of classes().
  std::vector<double> Probabilities(std::span<const float> x) const;

  const SoftmaxParams& params() const { return params_; }
  const std::vector<Label>& classes() const { return classes_; }
  const Standardizer& standardizer() const { return standardizer_; }

 private:
  SoftmaxParams params_;
  std::vector<Label> classes_;
  Standardizer standardizer_;
  FeatureSpec spec_;
};

struct SoftmaxTrainOptions {
  std::size_t epochs = 200;
  double learning_rate = 0.1;
  double lambda = 1e-4;
  std::uint64_t seed = 0;
  double init_scale = 0.01;  // stddev of the initial weights
};

struct EpochStats {
  std::size_t epoch = 0;
  double train_loss = 0.0;    // objective at the weights entering the epoch
  double val_accuracy = 0.0;  // percent, after the epoch's update
};

struct SoftmaxTrainResult {
  SoftmaxClassifier model;  // snapshot with the best validation accuracy
  std::size_t best_epoch = 0;
  std::vector<EpochStats> curve;
};

// Full-batch gradient descent on train; standardization is fitted on train
// only. Picks the epoch with the highest validation accuracy (earliest on
// ties). Throws kDivergence naming the epoch and learning rate when the loss
// becomes non-finite.
SoftmaxTrainResult TrainSoftmax(const FeatureMatrix& train,
                                std::span<const Label> train_labels,
                                const FeatureMatrix& val,
                                std::span<const Label> val_labels,
                                const FeatureSpec& spec,
                                const SoftmaxTrainOptions& options);

std::string CurveToCsv(std::span<const EpochStats> curve);

}  // namespace hsidj

#endif  // HSIDJ_SOFTMAX_H_
