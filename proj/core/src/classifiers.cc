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

#include "hsidj/classifiers.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "hsidj/error.h"

namespace hsidj {

Standardizer Standardizer::Fit(const FeatureMatrix& train) {
  if (train.rows == 0) {
    throw Error(ErrorCode::kFit, "cannot standardize an empty training set");
  }
  Standardizer s;
  s.mean_.assign(train.dim, 0.0);
  s.scale_.assign(train.dim, 0.0);
  for (std::size_t i = 0; i < train.rows; ++i) {
    const auto row = train.row(i);
    for (std::size_t j = 0; j < train.dim; ++j) s.mean_[j] += row[j];
  }
  const double n = static_cast<double>(train.rows);
  for (double& m : s.mean_) m /= n;
  for (std::size_t i = 0; i < train.rows; ++i) {
    const auto row = train.row(i);
    for (std::size_t j = 0; j < train.dim; ++j) {
      const double d = row[j] - s.mean_[j];
      s.scale_[j] += d * d;
    }
  }
  for (double& v : s.scale_) {
    const double sd = std::sqrt(v / n);
    v = sd < 1e-12 ? 1.0 : sd;
  }
  return s;
}

void Standardizer::Apply(std::span<const float> in,
                         std::span<double> out) const {
  if (identity()) {
    std::copy(in.begin(), in.end(), out.begin());
    return;
  }
  for (std::size_t j = 0; j < in.size(); ++j) {
    out[j] = (in[j] - mean_[j]) / scale_[j];
  }
}

CentroidClassifier CentroidClassifier::Fit(const FeatureMatrix& train,
                                           std::span<const Label> labels,
                                           const FeatureSpec& spec,
                                           std::span<const Label> classes) {
  if (train.rows == 0 || labels.size() != train.rows) {
    throw Error(ErrorCode::kFit, "centroid fit needs one label per training "
                                 "row and at least one row");
  }
  CentroidClassifier model;
  model.spec_ = spec;
  model.dim_ = train.dim;
  model.standardizer_ = Standardizer::Fit(train);

  std::map<Label, std::pair<std::vector<double>, std::size_t>> sums;
  std::vector<double> z(train.dim);
  for (std::size_t i = 0; i < train.rows; ++i) {
    model.standardizer_.Apply(train.row(i), z);
    auto& [sum, count] = sums[labels[i]];
    if (sum.empty()) sum.assign(train.dim, 0.0);
    for (std::size_t j = 0; j < train.dim; ++j) sum[j] += z[j];
    ++count;
  }
  for (Label c : classes) {
    if (!sums.contains(c)) {
      throw Error(ErrorCode::kFit, "class " + std::to_string(c) +
                                       " has no training samples");
    }
  }
  for (auto& [label, entry] : sums) {
    model.classes_.push_back(label);
    for (double v : entry.first) {
      model.centroids_.push_back(v / static_cast<double>(entry.second));
    }
  }
  return model;
}

Label CentroidClassifier::Predict(std::span<const float> x) const {
  std::vector<double> z(dim_);
  standardizer_.Apply(x, z);
  double best = std::numeric_limits<double>::infinity();
  Label label = classes_.front();
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    const auto mu = centroid(c);
    double d = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      const double diff = z[j] - mu[j];
      d += diff * diff;
    }
    if (d < best) {
      best = d;
      label = classes_[c];
    }
  }
  return label;
}

KnnClassifier KnnClassifier::Fit(FeatureMatrix train, std::vector<Label> labels,
                                 std::size_t k, const FeatureSpec& spec) {
  if (train.rows == 0) {
    throw Error(ErrorCode::kFit, "k-NN needs at least one training sample");
  }
  if (labels.size() != train.rows) {
    throw Error(ErrorCode::kFit, "k-NN needs one label per training row");
  }
  if (k == 0 || k > train.rows) {
    throw Error(ErrorCode::kFit, "k must lie in [1, " +
                                     std::to_string(train.rows) + "], got " +
                                     std::to_string(k));
  }
  KnnClassifier model;
  model.spec_ = spec;
  model.k_ = k;
  model.train_ = std::move(train);
  model.labels_ = std::move(labels);
  return model;
}

Label VoteNeighbors(std::span<const Label> labels,
                    std::span<const double> distances) {
  struct Tally {
    std::size_t votes = 0;
    double distance = 0.0;
  };
  std::map<Label, Tally> tally;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    Tally& t = tally[labels[i]];
    ++t.votes;
    t.distance += distances[i];
  }
  auto best = tally.begin();
  for (auto it = std::next(tally.begin()); it != tally.end(); ++it) {
    const Tally& a = it->second;
    const Tally& b = best->second;
    if (a.votes > b.votes || (a.votes == b.votes && a.distance < b.distance)) {
      best = it;
    }
  }
  return best->first;
}

namespace {

// Eight independent lanes so the compiler can vectorize the reduction.
float SquaredDistance(const float* a, const float* b, std::size_t dim) {
  constexpr std::size_t kLanes = 8;
  float lanes[kLanes] = {};
  std::size_t j = 0;
  for (; j + kLanes <= dim; j += kLanes) {
    for (std::size_t l = 0; l < kLanes; ++l) {
      const float diff = a[j + l] - b[j + l];
      lanes[l] += diff * diff;
    }
  }
  float acc = 0.0f;
  for (; j < dim; ++j) {
    const float diff = a[j] - b[j];
    acc += diff * diff;
  }
  for (std::size_t l = 0; l < kLanes; ++l) acc += lanes[l];
  return acc;
}

}  // namespace

Label KnnClassifier::Predict(std::span<const float> x) const {
  const std::size_t n = train_.rows;
  const std::size_t dim = train_.dim;
  std::vector<std::pair<float, std::size_t>> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const float* t = train_.data.data() + i * dim;
    d[i] = {SquaredDistance(x.data(), t, dim), i};
  }
  if (k_ == 1) {
    const auto best = std::min_element(d.begin(), d.end());
    return labels_[best->second];
  }
  std::partial_sort(d.begin(), d.begin() + k_, d.end());
  std::vector<Label> votes(k_);
  std::vector<double> dist(k_);
  for (std::size_t i = 0; i < k_; ++i) {
    votes[i] = labels_[d[i].second];
    dist[i] = std::sqrt(static_cast<double>(d[i].first));
  }
  return VoteNeighbors(votes, dist);
}

}  // namespace hsidj
