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

#include "hsidj/metrics.h"

#include <algorithm>
#include <numeric>

#include "hsidj/error.h"

namespace hsidj {

ConfusionMatrix::ConfusionMatrix(std::vector<Label> labels)
    : labels_(std::move(labels)), cells_(labels_.size() * labels_.size(), 0) {
  if (!std::is_sorted(labels_.begin(), labels_.end()) ||
      std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end()) {
    throw Error(ErrorCode::kInput,
                "confusion labels must be strictly ascending");
  }
}

std::size_t ConfusionMatrix::IndexOf(Label label) const {
  const auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) {
    throw Error(ErrorCode::kInput,
                "label " + std::to_string(label) + " not in confusion matrix");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

void ConfusionMatrix::Add(std::size_t truth, std::size_t predicted,
                          std::uint64_t n) {
  if (truth >= k() || predicted >= k()) {
    throw Error(ErrorCode::kInput, "confusion cell out of range");
  }
  cells_[truth * k() + predicted] += n;
}

void ConfusionMatrix::AddLabels(Label truth, Label predicted) {
  Add(IndexOf(truth), IndexOf(predicted));
}

std::uint64_t ConfusionMatrix::total() const {
  return std::accumulate(cells_.begin(), cells_.end(), std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < k(); ++i) t += at(i, i);
  return t;
}

std::uint64_t ConfusionMatrix::RowSum(std::size_t truth) const {
  std::uint64_t s = 0;
  for (std::size_t j = 0; j < k(); ++j) s += at(truth, j);
  return s;
}

std::uint64_t ConfusionMatrix::ColSum(std::size_t predicted) const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < k(); ++i) s += at(i, predicted);
  return s;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  if (labels_ != other.labels_) {
    throw Error(ErrorCode::kInput, "cannot add confusion matrices over "
                                   "different labels");
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] += other.cells_[i];
  return *this;
}

ConfusionMatrix Confusion(std::span<const Label> truth,
                          std::span<const Label> predicted,
                          std::vector<Label> labels) {
  if (truth.size() != predicted.size()) {
    throw Error(ErrorCode::kInput,
                "truth has " + std::to_string(truth.size()) +
                    " labels, predictions " + std::to_string(predicted.size()));
  }
  ConfusionMatrix cm(std::move(labels));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    cm.AddLabels(truth[i], predicted[i]);
  }
  return cm;
}

ConfusionMatrix Confusion(std::span<const Label> truth,
                          std::span<const Label> predicted, std::size_t k) {
  std::vector<Label> labels(k);
  std::iota(labels.begin(), labels.end(), Label{1});
  return Confusion(truth, predicted, std::move(labels));
}

EvalReport ComputeMetrics(const ConfusionMatrix& cm) {
  const std::uint64_t total = cm.total();
  if (total == 0) {
    throw Error(ErrorCode::kEmptyEvaluation, "no samples were evaluated");
  }
  EvalReport report;
  report.samples = total;
  const std::uint64_t trace = cm.trace();
  report.oa = 100.0 * static_cast<double>(trace) / static_cast<double>(total);

  double recall_sum = 0.0;
  std::size_t recall_classes = 0;
  unsigned __int128 chance = 0;  // sum_c row_c * col_c
  for (std::size_t c = 0; c < cm.k(); ++c) {
    ClassMetrics m;
    m.label = cm.labels()[c];
    m.support = cm.RowSum(c);
    m.predicted = cm.ColSum(c);
    m.correct = cm.at(c, c);
    chance += static_cast<unsigned __int128>(m.support) * m.predicted;
    if (m.predicted > 0) {
      m.precision = 100.0 * static_cast<double>(m.correct) /
                    static_cast<double>(m.predicted);
    }
    if (m.support > 0) {
      const double recall = 100.0 * static_cast<double>(m.correct) /
                            static_cast<double>(m.support);
      m.recall = recall;
      m.f1 = (m.precision + recall) > 0
                 ? 2.0 * m.precision * recall / (m.precision + recall)
                 : 0.0;
      recall_sum += recall;
      ++recall_classes;
    }
    report.per_class.push_back(m);
  }
  report.aa = recall_sum / static_cast<double>(recall_classes);

  const unsigned __int128 t = total;
  const __int128 numerator =
      static_cast<__int128>(t * trace) - static_cast<__int128>(chance);
  const __int128 denominator =
      static_cast<__int128>(t * t) - static_cast<__int128>(chance);
  if (denominator == 0) {
    report.kappa_degenerate = true;
    report.kappa = trace == total ? 100.0 : 0.0;
  } else {
    report.kappa = 100.0 * (static_cast<double>(numerator) /
                            static_cast<double>(denominator));
  }
  return report;
}

}  // namespace hsidj
