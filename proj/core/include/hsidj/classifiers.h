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

#ifndef HSIDJ_CLASSIFIERS_H_
#define HSIDJ_CLASSIFIERS_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "hsidj/features.h"
#include "hsidj/raster.h"

namespace hsidj {

// A fitted model mapping one feature vector to a class label. Prediction is
// const and safe to call concurrently.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual std::string_view kind() const = 0;
  virtual const FeatureSpec& features() const = 0;
  virtual Label Predict(std::span<const float> x) const = 0;
};

// Per-feature zero-mean / unit-variance transform fitted on training rows.
// Features with (population) stddev below 1e-12 keep scale 1. A default
// constructed standardizer is the identity.
class Standardizer {
 public:
  Standardizer() = default;
  static Standardizer Fit(const FeatureMatrix& train);

  bool identity() const { return mean_.empty(); }
  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& scale() const { return scale_; }

  void Apply(std::span<const float> in, std::span<double> out) const;

 private:
  std::vector<double> mean_;
  std::vector<double> scale_;
};

// Nearest class mean in standardized feature space; ties go to the smaller
// label.
class CentroidClassifier final : public Classifier {
 public:
  // `classes`, when non-empty, lists labels that must each have >= 1
  // training row (kFit otherwise).
  static CentroidClassifier Fit(const FeatureMatrix& train,
                                std::span<const Label> labels,
                                const FeatureSpec& spec,
                                std::span<const Label> classes = {});

  std::string_view kind() const override { return "centroid"; }
  const FeatureSpec& features() const override { return spec_; }
  Label Predict(std::span<const float> x) const override;

  const std::vector<Label>& classes() const { return classes_; }
  // Centroid of classes()[i] in standardized space.
  std::span<const double> centroid(std::size_t i) const {
    return std::span<const double>(centroids_).subspan(i * dim_, dim_);
  }
  const Standardizer& standardizer() const { return standardizer_; }

 private:
  FeatureSpec spec_;
  std::size_t dim_ = 0;
  Standardizer standardizer_;
  std::vector<Label> classes_;
  std::vector<double> centroids_;
};

// k nearest training rows under raw Euclidean distance (no
// standardization). Vote: most neighbors wins, then the smaller summed
// distance, then the smaller label. Neighbor selection breaks distance ties
// by training row order.
class KnnClassifier final : public Classifier {
 public:
  static KnnClassifier Fit(FeatureMatrix train, std::vector<Label> labels,
                           std::size_t k, const FeatureSpec& spec);

  std::string_view kind() const override { return "knn"; }
  const FeatureSpec& features() const override { return spec_; }
  Label Predict(std::span<const float> x) const override;

  std::size_t k() const { return k_; }

 private:
  FeatureSpec spec_;
  std::size_t k_ = 1;
  FeatureMatrix train_;
  std::vector<Label> labels_;
};

// Majority vote over (label, distance) neighbor pairs, exposed for testing.
Label VoteNeighbors(std::span<const Label> labels,
                    std::span<const double> distances);

}  // namespace hsidj

#endif  // HSIDJ_CLASSIFIERS_H_
