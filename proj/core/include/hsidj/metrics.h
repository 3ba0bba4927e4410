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

#ifndef HSIDJ_METRICS_H_
#define HSIDJ_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hsidj/raster.h"

namespace hsidj {

// k x k counts; rows are true classes, columns predicted classes, both in
// the order of labels().
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::vector<Label> labels);

  std::size_t k() const { return labels_.size(); }
  const std::vector<Label>& labels() const { return labels_; }

  // Throws kInput for labels outside labels().
  std::size_t IndexOf(Label label) const;
  void Add(std::size_t truth, std::size_t predicted, std::uint64_t n = 1);
  void AddLabels(Label truth, Label predicted);

  std::uint64_t at(std::size_t truth, std::size_t predicted) const {
    return cells_[truth * k() + predicted];
  }
  std::uint64_t total() const;
  std::uint64_t trace() const;
  std::uint64_t RowSum(std::size_t truth) const;
  std::uint64_t ColSum(std::size_t predicted) const;

  // Cell-wise sum; throws kInput when the label sets differ.
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
  friend bool operator==(const ConfusionMatrix&,
                         const ConfusionMatrix&) = default;

 private:
  std::vector<Label> labels_;
  std::vector<std::uint64_t> cells_;
};

// Tallies (truth, predicted) pairs over classes 1..k. Throws kInput on a
// length mismatch or out-of-range label.
ConfusionMatrix Confusion(std::span<const Label> truth,
                          std::span<const Label> predicted, std::size_t k);
ConfusionMatrix Confusion(std::span<const Label> truth,
                          std::span<const Label> predicted,
                          std::vector<Label> labels);

// All percentages are on a 0-100 scale.
struct ClassMetrics {
  Label label = 0;
  std::uint64_t support = 0;    // true samples
  std::uint64_t predicted = 0;  // samples predicted as this class
  std::uint64_t correct = 0;
  std::optional<double> recall;  // absent when support == 0
  double precision = 0.0;        // 0 when nothing was predicted as the class
  std::optional<double> f1;      // absent when recall is
};

struct EvalReport {
  std::string set_name;
  std::uint64_t samples = 0;
  std::vector<ClassMetrics> per_class;
  double oa = 0.0;
  double aa = 0.0;
  double kappa = 0.0;
  bool kappa_degenerate = false;
  double wall_time_seconds = 0.0;
};

// OA = 100 trace / total. AA = mean recall over classes with support.
// Kappa = 100 (p_o - p_e) / (1 - p_e), p_o = trace / total,
// p_e = sum_c row_c col_c / total^2, evaluated as the exact integer ratio
// (total * trace - sum row*col) / (total^2 - sum row*col). When p_e = 1 the
// kappa is 100 if p_o = 1, else 0, and kappa_degenerate is set.
// Throws kEmptyEvaluation for an empty matrix.
EvalReport ComputeMetrics(const ConfusionMatrix& cm);

}  // namespace hsidj

#endif  // HSIDJ_METRICS_H_
