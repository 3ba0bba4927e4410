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

#include "hsidj/softmax.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "hsidj/error.h"
#include "hsidj/random.h"

namespace hsidj {

SoftmaxParams SoftmaxParams::Zeros(std::size_t classes, std::size_t dim) {
  return {classes, dim, std::vector<double>(classes * dim, 0.0),
          std::vector<double>(classes, 0.0)};
}

std::vector<double> SoftmaxForward(const SoftmaxParams& params,
                                   std::span<const double> x) {
  std::vector<double> z(params.classes);
  for (std::size_t c = 0; c < params.classes; ++c) {
    const double* w = params.weights.data() + c * params.dim;
    double acc = params.bias[c];
    for (std::size_t j = 0; j < params.dim; ++j) acc += w[j] * x[j];
    z[c] = acc;
  }
  const double shift = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - shift);
    sum += v;
  }
  for (double& v : z) v /= sum;
  return z;
}

SoftmaxLossGrad ComputeSoftmaxLossGrad(const SoftmaxParams& params,
                                       const SoftmaxBatch& batch,
                                       double lambda) {
  SoftmaxLossGrad out;
  out.grad = SoftmaxParams::Zeros(params.classes, params.dim);
  const double inv_n = batch.rows > 0 ? 1.0 / static_cast<double>(batch.rows)
                                      : 0.0;
  for (std::size_t i = 0; i < batch.rows; ++i) {
    const std::span<const double> x(batch.x.data() + i * batch.dim, batch.dim);
    const std::vector<double> p = SoftmaxForward(params, x);
    const std::size_t y = batch.y[i];
    out.data_loss -= std::log(std::max(p[y], 1e-300));
    for (std::size_t c = 0; c < params.classes; ++c) {
      const double delta = (p[c] - (c == y ? 1.0 : 0.0)) * inv_n;
      double* g = out.grad.weights.data() + c * params.dim;
      for (std::size_t j = 0; j < params.dim; ++j) g[j] += delta * x[j];
      out.grad.bias[c] += delta;
    }
  }
  out.data_loss *= inv_n;
  double penalty = 0.0;
  for (std::size_t i = 0; i < params.weights.size(); ++i) {
    penalty += params.weights[i] * params.weights[i];
    out.grad.weights[i] += lambda * params.weights[i];
  }
  out.loss = out.data_loss + 0.5 * lambda * penalty;
  return out;
}

SoftmaxClassifier::SoftmaxClassifier(SoftmaxParams params,
                                     std::vector<Label> classes,
                                     Standardizer standardizer,
                                     FeatureSpec spec)
    : params_(std::move(params)),
      classes_(std::move(classes)),
      standardizer_(std::move(standardizer)),
      spec_(spec) {}

std::vector<double> SoftmaxClassifier::Probabilities(
    std::span<const float> x) const {
  std::vector<double> z(params_.dim);
  standardizer_.Apply(x, z);
  return SoftmaxForward(params_, z);
}

Label SoftmaxClassifier::Predict(std::span<const float> x) const {
  const std::vector<double> p = Probabilities(x);
  return classes_[static_cast<std::size_t>(
      std::max_element(p.begin(), p.end()) - p.begin())];
}

namespace {

SoftmaxBatch MakeBatch(const FeatureMatrix& features,
                       std::span<const Label> labels,
                       const Standardizer& standardizer,
                       const std::map<Label, std::size_t>& class_index,
                       bool allow_unknown) {
  SoftmaxBatch batch;
  batch.dim = features.dim;
  batch.x.resize(features.rows * features.dim);
  for (std::size_t i = 0; i < features.rows; ++i) {
    const auto it = class_index.find(labels[i]);
    if (it == class_index.end()) {
      if (!allow_unknown) {
        throw Error(ErrorCode::kFit, "unknown label " +
                                         std::to_string(labels[i]));
      }
      // Never predicted, so it can only count as an error.
      batch.y.push_back(class_index.size());
    } else {
      batch.y.push_back(it->second);
    }
    standardizer.Apply(features.row(i),
                       std::span<double>(batch.x).subspan(i * batch.dim,
                                                          batch.dim));
    ++batch.rows;
  }
  return batch;
}

double Accuracy(const SoftmaxParams& params, const SoftmaxBatch& batch) {
  if (batch.rows == 0) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < batch.rows; ++i) {
    const std::vector<double> p = SoftmaxForward(
        params, std::span<const double>(batch.x.data() + i * batch.dim,
                                        batch.dim));
    const auto arg = static_cast<std::size_t>(
        std::max_element(p.begin(), p.end()) - p.begin());
    if (arg == batch.y[i]) ++correct;
  }
  return 100.0 * static_cast<double>(correct) /
         static_cast<double>(batch.rows);
}

}  // namespace

SoftmaxTrainResult TrainSoftmax(const FeatureMatrix& train,
                                std::span<const Label> train_labels,
                                const FeatureMatrix& val,
                                std::span<const Label> val_labels,
                                const FeatureSpec& spec,
                                const SoftmaxTrainOptions& options) {
  if (train.rows == 0 || train_labels.size() != train.rows) {
    throw Error(ErrorCode::kFit, "softmax needs labeled training rows");
  }
  if (val_labels.size() != val.rows || val.dim != train.dim) {
    throw Error(ErrorCode::kFit, "validation set does not match training set");
  }
  std::map<Label, std::size_t> class_index;
  for (Label l : train_labels) class_index.emplace(l, 0);
  std::vector<Label> classes;
  for (auto& [label, index] : class_index) {
    index = classes.size();
    classes.push_back(label);
  }

  const Standardizer standardizer = Standardizer::Fit(train);
  const SoftmaxBatch train_batch =
      MakeBatch(train, train_labels, standardizer, class_index, false);
  const SoftmaxBatch val_batch =
      MakeBatch(val, val_labels, standardizer, class_index, true);

  SoftmaxParams params = SoftmaxParams::Zeros(classes.size(), train.dim);
  Rng rng(options.seed);
  for (double& w : params.weights) w = options.init_scale * rng.StandardNormal();

  SoftmaxTrainResult result;
  SoftmaxParams best = params;
  double best_accuracy = -1.0;
  for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    const SoftmaxLossGrad lg =
        ComputeSoftmaxLossGrad(params, train_batch, options.lambda);
    if (!std::isfinite(lg.loss)) {
      std::ostringstream msg;
      msg << "loss became non-finite at epoch " << epoch
          << " with learning rate " << options.learning_rate;
      throw Error(ErrorCode::kDivergence, msg.str());
    }
    for (std::size_t i = 0; i < params.weights.size(); ++i) {
      params.weights[i] -= options.learning_rate * lg.grad.weights[i];
    }
    for (std::size_t c = 0; c < params.classes; ++c) {
      params.bias[c] -= options.learning_rate * lg.grad.bias[c];
    }
    const double accuracy = Accuracy(params, val_batch);
    result.curve.push_back({epoch, lg.loss, accuracy});
    if (accuracy > best_accuracy) {
      best_accuracy = accuracy;
      best = params;
      result.best_epoch = epoch;
    }
  }
  result.model = SoftmaxClassifier(std::move(best), std::move(classes),
                                   standardizer, spec);
  return result;
}

std::string CurveToCsv(std::span<const EpochStats> curve) {
  std::ostringstream out;
  out.precision(17);
  out << "epoch,loss,val_accuracy\n";
  for (const EpochStats& e : curve) {
    out << e.epoch << ',' << e.train_loss << ',' << e.val_accuracy << '\n';
  }
  return out.str();
}

}  // namespace hsidj
