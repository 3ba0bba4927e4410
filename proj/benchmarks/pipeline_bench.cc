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

#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "alloc_probe.h"
#include "hsidj/audit.h"
#include "hsidj/classifiers.h"
#include "hsidj/features.h"
#include "hsidj/ingest.h"
#include "hsidj/metrics.h"
#include "hsidj/patching.h"
#include "hsidj/protocol.h"
#include "hsidj/splitting.h"

namespace hsidj {
namespace {

SynthConfig Scene(std::size_t side, std::size_t bands) {
  SynthConfig cfg;
  cfg.rows = side;
  cfg.cols = side;
  cfg.bands = bands;
  cfg.num_classes = 4;
  cfg.blob_count = 12;
  cfg.class_separation = 1.0;
  cfg.noise_sigma = 0.5;
  cfg.seed = 42;
  return cfg;
}

// Streams every patch and reports the peak heap growth of the stream.
void BM_PatchStream(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto window = static_cast<std::size_t>(state.range(1));
  const auto [cube, gt] = SynthDataset(Scene(side, 32));
  const PatchSpec spec = PatchSpec::FromWindow(window);
  std::size_t peak = 0;
  for (auto _ : state) {
    alloc_probe::PeakScope scope;
    PatchStream stream(cube, gt, spec);
    double sum = 0.0;
    while (stream.Next()) sum += stream.current().values[0];
    benchmark::DoNotOptimize(sum);
    peak = scope.PeakAdditionalBytes();
  }
  state.counters["peak_bytes"] = static_cast<double>(peak);
  state.counters["patches"] = benchmark::Counter(
      static_cast<double>(side * side), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_PatchStream)->Args({128, 8})->Args({256, 8})->Args({256, 16})
    ->Unit(benchmark::kMillisecond);

// The materializing path, for contrast with BM_PatchStream.
void BM_CollectPatches(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto [cube, gt] = SynthDataset(Scene(side, 32));
  const PatchSpec spec = PatchSpec::FromWindow(8);
  std::size_t peak = 0;
  for (auto _ : state) {
    alloc_probe::PeakScope scope;
    PatchSet set = CollectPatches(cube, gt, spec);
    benchmark::DoNotOptimize(set.records.data());
    peak = scope.PeakAdditionalBytes();
  }
  state.counters["peak_bytes"] = static_cast<double>(peak);
}
BENCHMARK(BM_CollectPatches)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_DisjointSplit(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto [cube, gt] = SynthDataset(Scene(side, 4));
  for (auto _ : state) {
    SplitIndices s = DisjointSplit(gt, SplitConfig{0.7, 0.5, 7});
    benchmark::DoNotOptimize(s.classes.data());
  }
}
BENCHMARK(BM_DisjointSplit)->Arg(145)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_LeakageReport(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto [cube, gt] = SynthDataset(Scene(side, 4));
  const SplitIndices s = DisjointSplit(gt, SplitConfig{0.7, 0.5, 7});
  const PatchSpec spec = PatchSpec::FromWindow(8);
  for (auto _ : state) {
    LeakageReport r = BuildLeakageReport(s, gt, spec);
    benchmark::DoNotOptimize(r.test_vs_train.overlapping);
  }
}
BENCHMARK(BM_LeakageReport)->Arg(145)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_KnnPatchPredict(benchmark::State& state) {
  const auto [cube, gt] = SynthDataset(Scene(64, 16));
  const SplitIndices s = DisjointSplit(gt, SplitConfig{0.7, 0.5, 7});
  ModelOptions options;
  options.kind = ModelKind::kKnn;
  options.features = {FeatureKind::kPatch, 8};
  const FittedModel fitted = FitOnSplits(options, cube, gt, s);
  const std::vector<LinearIndex> test = s.AllTest();
  for (auto _ : state) {
    auto predictions = PredictIndices(*fitted.model, cube, test);
    benchmark::DoNotOptimize(predictions.data());
  }
  state.counters["queries"] = static_cast<double>(test.size());
}
BENCHMARK(BM_KnnPatchPredict)->Unit(benchmark::kMillisecond);

void BM_Metrics(benchmark::State& state) {
  std::vector<Label> labels(16);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = Label(i + 1);
  ConfusionMatrix cm(labels);
  for (std::size_t i = 0; i < 16; ++i) {
    for (std::size_t j = 0; j < 16; ++j) cm.Add(i, j, (i * 7 + j * 3) % 50);
  }
  for (auto _ : state) benchmark::DoNotOptimize(ComputeMetrics(cm).kappa);
}
BENCHMARK(BM_Metrics);

}  // namespace
}  // namespace hsidj

BENCHMARK_MAIN();
