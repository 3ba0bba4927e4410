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
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "hsidj/error.h"
#include "hsidj/features.h"
#include "hsidj/ingest.h"
#include "hsidj/random.h"
#include "hsidj/softmax.h"
#include "hsidj/splitting.h"
#include "test_util.h"

namespace hsidj {
namespace {

using testing::CodeOf;

const FeatureSpec kSpectrum{FeatureKind::kSpectrum, 1};

SoftmaxParams RandomParams(std::size_t classes, std::size_t dim, Rng& rng) {
  SoftmaxParams p = SoftmaxParams::Zeros(classes, dim);
  for (double& w : p.weights) w = rng.StandardNormal();
  for (double& b : p.bias) b = rng.StandardNormal();
  return p;
}

SoftmaxBatch RandomBatch(std::size_t rows, std::size_t dim, std::size_t classes,
                         Rng& rng) {
  SoftmaxBatch b{rows, dim, {}, {}};
  for (std::size_t i = 0; i < rows * dim; ++i) b.x.push_back(rng.StandardNormal());
  for (std::size_t i = 0; i < rows; ++i) b.y.push_back(rng.UniformBelow(classes));
  return b;
}

TEST(SoftmaxForwardTest, Examples) {
  const std::vector<double> x = {0.3, -1.0};
  const auto uniform = SoftmaxForward(SoftmaxParams::Zeros(4, 2), x);
  for (double p : uniform) EXPECT_DOUBLE_EQ(p, 0.25);

  SoftmaxParams p = SoftmaxParams::Zeros(2, 2);
  p.bias = {std::log(1.0), std::log(3.0)};
  const auto probs = SoftmaxForward(p, x);
  EXPECT_NEAR(probs[0], 0.25, 1e-15);
  EXPECT_NEAR(probs[1], 0.75, 1e-15);
}

TEST(SoftmaxForwardTest, StableForHugeInputs) {
  Rng rng(2);
  const SoftmaxParams p = RandomParams(5, 3, rng);
  for (double scale : {1e3, 1e150, -1e300}) {
    const std::vector<double> x = {scale, -scale / 2, scale / 3};
    const auto probs = SoftmaxForward(p, x);
    double sum = 0;
    for (double v : probs) {
      ASSERT_TRUE(std::isfinite(v));
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(SoftmaxLossTest, UniformPredictionsGiveLogK) {
  Rng rng(3);
  const SoftmaxBatch batch = RandomBatch(7, 3, 5, rng);
  const SoftmaxLossGrad lg = ComputeSoftmaxLossGrad(SoftmaxParams::Zeros(5, 3), batch, 0.1);
  EXPECT_NEAR(lg.data_loss, std::log(5.0), 1e-12);
  EXPECT_NEAR(lg.loss, std::log(5.0), 1e-12);  // zero weights, zero penalty
}

TEST(SoftmaxLossTest, PerfectPredictionsLeavePenaltyOnly) {
  // Two classes separated along x; huge weights make p_y ~ 1.
  SoftmaxBatch batch{2, 1, {1.0, -1.0}, {0, 1}};
  SoftmaxParams p = SoftmaxParams::Zeros(2, 1);
  p.weights = {50.0, -50.0};
  const double lambda = 1e-3;
  const SoftmaxLossGrad lg = ComputeSoftmaxLossGrad(p, batch, lambda);
  EXPECT_LT(lg.data_loss, 1e-40);
  EXPECT_NEAR(lg.loss, lambda / 2 * (50.0 * 50.0 * 2), 1e-9);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR(lg.grad.weights[i] - lambda * p.weights[i], 0.0, 1e-30);
    EXPECT_NEAR(lg.grad.bias[i], 0.0, 1e-30);
  }
}

double RelativeError(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}

TEST(SoftmaxLossTest, GradientMatchesFiniteDifferences) {
  Rng rng(4);
  constexpr double kH = 1e-4;
  for (int draw = 0; draw < 20; ++draw) {
    const std::size_t classes = 2 + rng.UniformBelow(4);
    const std::size_t dim = 1 + rng.UniformBelow(5);
    const SoftmaxBatch batch = RandomBatch(1 + rng.UniformBelow(8), dim, classes, rng);
    const double lambda = 0.1 * rng.UniformUnit();
    SoftmaxParams p = RandomParams(classes, dim, rng);
    const SoftmaxLossGrad lg = ComputeSoftmaxLossGrad(p, batch, lambda);
    auto check = [&](std::vector<double>& params, const std::vector<double>& grad) {
      for (std::size_t i = 0; i < params.size(); ++i) {
        const double saved = params[i];
        params[i] = saved + kH;
        const double up = ComputeSoftmaxLossGrad(p, batch, lambda).loss;
        params[i] = saved - kH;
        const double down = ComputeSoftmaxLossGrad(p, batch, lambda).loss;
        params[i] = saved;
        const double numeric = (up - down) / (2 * kH);
        if (std::abs(grad[i]) < 1e-6 && std::abs(numeric) < 1e-6) {
          EXPECT_NEAR(grad[i], numeric, 1e-9);
        } else {
          EXPECT_LT(RelativeError(grad[i], numeric), 1e-5)
              << grad[i] << " vs " << numeric;
        }
      }
    };
    check(p.weights, lg.grad.weights);
    check(p.bias, lg.grad.bias);
  }
}

struct Data {
  FeatureMatrix train, val;
  std::vector<Label> train_labels, val_labels;
};

Data SynthData(double noise, std::uint64_t seed) {
  SynthConfig cfg;
  cfg.rows = 24;
  cfg.cols = 24;
  cfg.bands = 6;
  cfg.num_classes = 3;
  cfg.blob_count = 6;
  cfg.noise_sigma = noise;
  cfg.seed = seed;
  const auto [cube, gt] = SynthDataset(cfg);
  const SplitIndices s = DisjointSplit(gt, SplitConfig{0.7, 0.5, seed});
  Data d;
  const auto train = s.AllTrain();
  const auto val = s.AllVal();
  d.train = BuildFeatures(cube, train, kSpectrum);
  d.val = BuildFeatures(cube, val, kSpectrum);
  for (auto i : train) d.train_labels.push_back(gt.at(i));
  for (auto i : val) d.val_labels.push_back(gt.at(i));
  return d;
}

TEST(TrainSoftmaxTest, ZeroLearningRateKeepsInitialWeights) {
  const Data d = SynthData(0.2, 1);
  SoftmaxTrainOptions o;
  o.epochs = 5;
  o.learning_rate = 0.0;
  o.seed = 9;
  const SoftmaxTrainResult r =
      TrainSoftmax(d.train, d.train_labels, d.val, d.val_labels, kSpectrum, o);
  Rng rng(9);
  for (double w : r.model.params().weights) {
    EXPECT_EQ(w, 0.01 * rng.StandardNormal());
  }
  for (double b : r.model.params().bias) EXPECT_EQ(b, 0.0);
  ASSERT_EQ(r.curve.size(), 5u);
  for (const EpochStats& e : r.curve) {
    EXPECT_EQ(e.train_loss, r.curve[0].train_loss);
    EXPECT_EQ(e.val_accuracy, r.curve[0].val_accuracy);
  }
  EXPECT_EQ(r.best_epoch, 1u);
}

TEST(TrainSoftmaxTest, NoiselessDataReachesFullValidationAccuracy) {
  const Data d = SynthData(0.0, 2);
  SoftmaxTrainOptions o;
  o.seed = 2;
  const SoftmaxTrainResult r =
      TrainSoftmax(d.train, d.train_labels, d.val, d.val_labels, kSpectrum, o);
  ASSERT_EQ(r.curve.size(), 200u);
  double best = 0;
  for (const EpochStats& e : r.curve) best = std::max(best, e.val_accuracy);
  EXPECT_EQ(best, 100.0);
  EXPECT_EQ(r.curve[r.best_epoch - 1].val_accuracy, 100.0);
  for (std::size_t i = 0; i < d.val.rows; ++i) {
    EXPECT_EQ(r.model.Predict(d.val.row(i)), d.val_labels[i]);
  }
  EXPECT_LT(r.curve.back().train_loss, r.curve.front().train_loss);
}

TEST(TrainSoftmaxTest, Deterministic) {
  const Data d = SynthData(0.5, 3);
  SoftmaxTrainOptions o;
  o.epochs = 30;
  o.seed = 3;
  const auto a = TrainSoftmax(d.train, d.train_labels, d.val, d.val_labels, kSpectrum, o);
  const auto b = TrainSoftmax(d.train, d.train_labels, d.val, d.val_labels, kSpectrum, o);
  EXPECT_EQ(CurveToCsv(a.curve), CurveToCsv(b.curve));
  EXPECT_EQ(a.model.params(), b.model.params());
}

TEST(TrainSoftmaxTest, DivergenceIsReported) {
  const Data d = SynthData(0.5, 4);
  SoftmaxTrainOptions o;
  o.epochs = 50;
  o.learning_rate = 1e305;
  EXPECT_EQ(CodeOf([&] {
              TrainSoftmax(d.train, d.train_labels, d.val, d.val_labels, kSpectrum, o);
            }),
            ErrorCode::kDivergence);
}

TEST(TrainSoftmaxTest, ProbabilitiesSumToOne) {
  const Data d = SynthData(0.5, 5);
  SoftmaxTrainOptions o;
  o.epochs = 10;
  const auto r = TrainSoftmax(d.train, d.train_labels, d.val, d.val_labels, kSpectrum, o);
  const auto probs = r.model.Probabilities(d.val.row(0));
  EXPECT_NEAR(std::accumulate(probs.begin(), probs.end(), 0.0), 1.0, 1e-12);
  EXPECT_EQ(r.model.classes(), (std::vector<Label>{1, 2, 3}));
}

TEST(CurveToCsvTest, Layout) {
  const std::vector<EpochStats> curve = {{1, 0.5, 50.0}, {2, 0.25, 75.0}};
  EXPECT_EQ(CurveToCsv(curve), "epoch,loss,val_accuracy\n1,0.5,50\n2,0.25,75\n");
}

}  // namespace
}  // namespace hsidj
