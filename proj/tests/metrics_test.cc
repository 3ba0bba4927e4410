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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "hsidj/error.h"
#include "hsidj/metrics.h"
#include "hsidj/random.h"
#include "metric_oracle.h"
#include "test_util.h"

namespace hsidj {
namespace {

using testing::CodeOf;

ConfusionMatrix FromRows(const std::vector<std::vector<std::uint64_t>>& rows) {
  std::vector<Label> labels;
  for (std::size_t i = 0; i < rows.size(); ++i) labels.push_back(i + 1);
  ConfusionMatrix cm(labels);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) cm.Add(i, j, rows[i][j]);
  }
  return cm;
}

void ExpectMatchesOracle(const std::vector<std::vector<std::uint64_t>>& rows) {
  const EvalReport r = ComputeMetrics(FromRows(rows));
  const testing::OracleMetrics o = testing::RationalMetrics(rows);
  EXPECT_NEAR(r.oa, o.oa, 1e-12);
  EXPECT_NEAR(r.aa, o.aa, 1e-12);
  EXPECT_NEAR(r.kappa, o.kappa, 1e-12);
  EXPECT_EQ(r.kappa_degenerate, o.kappa_degenerate);
  ASSERT_EQ(r.per_class.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ClassMetrics& c = r.per_class[i];
    ASSERT_EQ(c.recall.has_value(), o.recall[i].has_value());
    if (c.recall) EXPECT_NEAR(*c.recall, *o.recall[i], 1e-12);
    EXPECT_NEAR(c.precision, o.precision[i], 1e-12);
    ASSERT_EQ(c.f1.has_value(), o.f1[i].has_value());
    if (c.f1) EXPECT_NEAR(*c.f1, *o.f1[i], 1e-12);
  }
}

TEST(ConfusionTest, Examples) {
  const std::vector<Label> a = {1, 2}, b = {1, 1}, c = {2, 2};
  const ConfusionMatrix diag = Confusion(a, a, 2);
  EXPECT_EQ(diag.at(0, 0), 1u);
  EXPECT_EQ(diag.at(1, 1), 1u);
  EXPECT_EQ(diag.trace(), 2u);
  const ConfusionMatrix off = Confusion(b, c, 2);
  EXPECT_EQ(off.at(0, 1), 2u);
  EXPECT_EQ(off.total(), 2u);
  EXPECT_EQ(off.trace(), 0u);
}

TEST(ConfusionTest, MatchesTally) {
  Rng rng(1);
  std::vector<Label> truth(1000), pred(1000);
  std::uint64_t tally[10][10] = {};
  for (std::size_t i = 0; i < 1000; ++i) {
    truth[i] = 1 + rng.UniformBelow(10);
    pred[i] = 1 + rng.UniformBelow(10);
    ++tally[truth[i] - 1][pred[i] - 1];
  }
  const ConfusionMatrix cm = Confusion(truth, pred, 10);
  for (std::size_t i = 0; i < 10; ++i) {
    std::uint64_t row = 0, col = 0;
    for (std::size_t j = 0; j < 10; ++j) {
      EXPECT_EQ(cm.at(i, j), tally[i][j]);
      row += tally[i][j];
      col += tally[j][i];
    }
    EXPECT_EQ(cm.RowSum(i), row);
    EXPECT_EQ(cm.ColSum(i), col);
  }
}

TEST(ConfusionTest, ArbitraryLabelSets) {
  const std::vector<Label> truth = {4, 9, 9}, pred = {9, 9, 4};
  const ConfusionMatrix cm = Confusion(truth, pred, std::vector<Label>{4, 9});
  EXPECT_EQ(cm.IndexOf(9), 1u);
  EXPECT_EQ(cm.at(0, 1), 1u);
  EXPECT_EQ(cm.at(1, 1), 1u);
  EXPECT_EQ(cm.at(1, 0), 1u);
}

TEST(ConfusionTest, Errors) {
  const std::vector<Label> a = {1, 2}, b = {1}, c = {1, 3};
  EXPECT_EQ(CodeOf([&] { Confusion(a, b, 2); }), ErrorCode::kInput);
  EXPECT_EQ(CodeOf([&] { Confusion(a, c, 2); }), ErrorCode::kInput);
  EXPECT_EQ(CodeOf([&] { Confusion(c, a, 2); }), ErrorCode::kInput);
  ConfusionMatrix x(std::vector<Label>{1, 2});
  const ConfusionMatrix y(std::vector<Label>{1, 3});
  EXPECT_EQ(CodeOf([&] { x += y; }), ErrorCode::kInput);
}

TEST(ConfusionTest, Sum) {
  ConfusionMatrix x = FromRows({{1, 2}, {3, 4}});
  x += FromRows({{1, 0}, {0, 1}});
  EXPECT_EQ(x, FromRows({{2, 2}, {3, 5}}));
}

TEST(MetricsTest, AnalyticAnchors) {
  const EvalReport perfect = ComputeMetrics(FromRows({{2, 0}, {0, 2}}));
  EXPECT_DOUBLE_EQ(perfect.oa, 100.0);
  EXPECT_DOUBLE_EQ(perfect.aa, 100.0);
  EXPECT_DOUBLE_EQ(perfect.kappa, 100.0);
  const EvalReport chance = ComputeMetrics(FromRows({{1, 1}, {1, 1}}));
  EXPECT_DOUBLE_EQ(chance.oa, 50.0);
  EXPECT_DOUBLE_EQ(chance.aa, 50.0);
  EXPECT_DOUBLE_EQ(chance.kappa, 0.0);
  EXPECT_EQ(chance.samples, 4u);
}

TEST(MetricsTest, DegenerateAgreement) {
  const EvalReport r = ComputeMetrics(FromRows({{0, 0}, {0, 5}}));
  EXPECT_TRUE(r.kappa_degenerate);
  EXPECT_DOUBLE_EQ(r.kappa, 100.0);
  EXPECT_DOUBLE_EQ(r.aa, 100.0);  // class 1 has no support and is skipped
  EXPECT_FALSE(r.per_class[0].recall.has_value());
  EXPECT_EQ(r.per_class[0].precision, 0.0);
  ExpectMatchesOracle({{0, 0}, {0, 5}});
}

TEST(MetricsTest, ClassNeverPredicted) {
  const EvalReport r = ComputeMetrics(FromRows({{0, 3}, {0, 2}}));
  EXPECT_EQ(r.per_class[0].precision, 0.0);
  EXPECT_DOUBLE_EQ(*r.per_class[0].recall, 0.0);
  EXPECT_DOUBLE_EQ(*r.per_class[0].f1, 0.0);
  ExpectMatchesOracle({{0, 3}, {0, 2}});
}

TEST(MetricsTest, Empty) {
  EXPECT_EQ(CodeOf([] { ComputeMetrics(FromRows({{0, 0}, {0, 0}})); }),
            ErrorCode::kEmptyEvaluation);
}

TEST(MetricsTest, RandomSixClassMatchesRationalOracle) {
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<std::uint64_t>> rows(6, std::vector<std::uint64_t>(6));
    for (auto& row : rows) {
      for (auto& v : row) v = rng.UniformBelow(21);
    }
    rows[0][0] += 1;
    ExpectMatchesOracle(rows);
  }
}

TEST(MetricsTest, SparseMatricesMatchRationalOracle) {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 1 + rng.UniformBelow(6);
    std::vector<std::vector<std::uint64_t>> rows(k, std::vector<std::uint64_t>(k));
    for (auto& row : rows) {
      for (auto& v : row) v = rng.UniformBelow(4) == 0 ? rng.UniformBelow(9) : 0;
    }
    rows[rng.UniformBelow(k)][rng.UniformBelow(k)] += 1;
    ExpectMatchesOracle(rows);
  }
}

}  // namespace
}  // namespace hsidj
