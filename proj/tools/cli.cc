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

#include "cli.h"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "alloc_probe.h"
#include "hsidj/audit.h"
#include "hsidj/error.h"
#include "hsidj/ingest.h"
#include "hsidj/mapgen.h"
#include "hsidj/parallel.h"
#include "hsidj/patching.h"
#include "hsidj/protocol.h"
#include "hsidj/report_io.h"
#include "hsidj/splitting.h"

namespace hsidj::cli {
namespace {

namespace fs = std::filesystem;

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
    case ErrorCode::kParse:
    case ErrorCode::kIntegrity:
    case ErrorCode::kUnsupportedFormat:
    case ErrorCode::kFormat:
      return kExitIo;
    case ErrorCode::kConfig:
      return kExitUsage;
    default:
      return kExitValidation;
  }
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
}

// Builds the "effective config" line: a complete command line with every
// default resolved.
class ConfigLine {
 public:
  explicit ConfigLine(std::string subcommand) {
    line_ << "hsidj " << subcommand;
  }
  template <typename T>
  ConfigLine& Add(const std::string& flag, const T& value) {
    line_ << " --" << flag << ' ' << value;
    return *this;
  }
  ConfigLine& Flag(const std::string& flag, bool on) {
    if (on) line_ << " --" << flag;
    return *this;
  }
  std::string str() const { return "effective-config: " + line_.str(); }

 private:
  std::ostringstream line_;
};

struct SynthArgs {
  SynthConfig cfg;
  std::string out_prefix;
  std::string interleave = "bsq";
};

struct SplitArgs {
  std::string gt;
  double test_ratio = 0.7;
  double val_ratio = 0.5;
  std::uint64_t seed = 0;
  std::string out;
};

struct AuditArgs {
  std::string gt;
  std::string splits;
  std::size_t window = 8;
  std::size_t top_k = 10;
  std::string out;
  std::size_t threads = 0;
};

struct EvalArgs {
  std::string cube;
  std::string raw;
  std::string gt;
  std::string splits;
  std::string model = "knn";
  std::string features;
  std::size_t window = 8;
  std::size_t k = 1;
  std::size_t epochs = 200;
  double lr = 0.1;
  double lambda = 1e-4;
  std::uint64_t seed = 0;
  std::string out;
  std::string curve;
  std::string predictions;
  bool predict_background = false;
  bool allow_overlap = false;
  double reuse_fraction = 0.5;
  std::size_t threads = 0;
};

struct MapArgs {
  std::string gt;
  std::string splits;
  std::string predictions;
  std::string mode = "test_only";
  std::string out;
  std::string palette_csv;
};

struct BenchArgs {
  std::size_t rows = 512;
  std::size_t cols = 512;
  std::size_t bands = 64;
  std::size_t window = 8;
  std::uint64_t seed = 0;
  double max_peak_mib = 0.0;
  std::size_t threads = 0;
};

int RunSynth(const SynthArgs& a, std::ostream& out) {
  const Interleave interleave = ParseInterleave(a.interleave);
  out << ConfigLine("synth")
             .Add("rows", a.cfg.rows)
             .Add("cols", a.cfg.cols)
             .Add("bands", a.cfg.bands)
             .Add("classes", a.cfg.num_classes)
             .Add("blobs", a.cfg.blob_count)
             .Add("separation", a.cfg.class_separation)
             .Add("noise", a.cfg.noise_sigma)
             .Add("seed", a.cfg.seed)
             .Add("interleave", InterleaveName(interleave))
             .Add("out-prefix", a.out_prefix)
             .str()
      << "\n";
  const auto [cube, gt] = SynthDataset(a.cfg);
  const fs::path prefix(a.out_prefix);
  WriteEnvi(cube, prefix.string() + ".hdr", prefix.string() + ".raw",
            interleave);
  WritePgm(gt, prefix.string() + "_gt.pgm");
  out << "wrote " << prefix.string() << ".hdr, " << prefix.string()
      << ".raw, " << prefix.string() << "_gt.pgm (" << cube.rows() << "x"
      << cube.cols() << "x" << cube.bands() << ", fingerprint "
      << FormatFingerprint(GroundTruthFingerprint(gt)) << ")\n";
  return kExitOk;
}

int RunSplit(const SplitArgs& a, std::ostream& out) {
  out << ConfigLine("split")
             .Add("gt", a.gt)
             .Add("test-ratio", a.test_ratio)
             .Add("val-ratio", a.val_ratio)
             .Add("seed", a.seed)
             .Add("out", a.out)
             .str()
      << "\n";
  const GroundTruth gt = ReadGroundTruth(a.gt);
  const SplitIndices splits =
      DisjointSplit(gt, SplitConfig{a.test_ratio, a.val_ratio, a.seed});
  SaveSplits(splits, a.out);
  out << "label    train      val     test\n";
  for (const ClassSplit& c : splits.classes) {
    out << std::setw(5) << c.label << std::setw(9) << c.train.size()
        << std::setw(9) << c.val.size() << std::setw(9) << c.test.size()
        << "\n";
  }
  return kExitOk;
}

int RunAudit(const AuditArgs& a, std::ostream& out, std::ostream& err) {
  const std::size_t threads = ResolveThreadCount(a.threads);
  out << ConfigLine("audit")
             .Add("gt", a.gt)
             .Add("splits", a.splits)
             .Add("window", a.window)
             .Add("top-k", a.top_k)
             .Add("threads", threads)
             .str()
      << (a.out.empty() ? "" : " --out " + a.out) << "\n";
  const GroundTruth gt = ReadGroundTruth(a.gt);
  const SplitIndices splits = ReadSplitsUnchecked(a.splits);
  const DisjointnessCheck check = VerifyDisjoint(splits, gt);
  if (!check.fingerprint_matches || !check.shape_matches) {
    err << "split '" << a.splits << "' was made for a different ground truth\n";
    return kExitValidation;
  }
  const PatchSpec spec = PatchSpec::FromWindow(a.window);
  const LeakageReport report =
      BuildLeakageReport(splits, gt, spec, LeakageOptions{a.top_k, threads});
  out << FormatLeakageSummary(report, check);
  if (!a.out.empty()) WriteText(a.out, LeakageReportToJson(report, splits));
  return check.passed() ? kExitOk : kExitValidation;
}

int RunEval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const std::size_t threads = ResolveThreadCount(a.threads);
  const ModelKind kind = ParseModelKind(a.model);
  const FeatureKind features =
      a.features.empty() ? (kind == ModelKind::kKnn ? FeatureKind::kPatch
                                                    : FeatureKind::kSpectrum)
                         : ParseFeatureKind(a.features);
  const PatchSpec spec = PatchSpec::FromWindow(a.window);
  const std::string raw =
      a.raw.empty() ? FindEnviRaw(a.cube).string() : a.raw;
  if (a.allow_overlap && !(a.reuse_fraction > 0 && a.reuse_fraction <= 1)) {
    throw Error(ErrorCode::kConfig, "--reuse-fraction must lie in (0, 1]");
  }

  ConfigLine config("eval");
  config.Add("cube", a.cube)
      .Add("raw", raw)
      .Add("gt", a.gt)
      .Add("splits", a.splits)
      .Add("model", ModelKindName(kind))
      .Add("features", FeatureKindName(features))
      .Add("window", a.window)
      .Add("k", a.k)
      .Add("epochs", a.epochs)
      .Add("lr", a.lr)
      .Add("lambda", a.lambda)
      .Add("seed", a.seed)
      .Add("threads", threads)
      .Add("out", a.out)
      .Flag("predict-background", a.predict_background)
      .Flag("allow-overlap", a.allow_overlap);
  if (a.allow_overlap) config.Add("reuse-fraction", a.reuse_fraction);
  if (!a.curve.empty()) config.Add("curve", a.curve);
  if (!a.predictions.empty()) config.Add("predictions", a.predictions);
  out << config.str() << "\n";

  const GroundTruth gt = ReadGroundTruth(a.gt);
  const SplitIndices splits = ReadSplitsUnchecked(a.splits);
  const DisjointnessCheck check = VerifyDisjoint(splits, gt);
  if (!check.fingerprint_matches || !check.shape_matches) {
    err << "split '" << a.splits << "' was made for a different ground truth\n";
    return kExitValidation;
  }
  if (!check.passed()) {
    for (const std::string& v : check.violations) err << "violation: " << v << "\n";
    if (!a.allow_overlap) {
      err << "refusing to evaluate a split that fails the disjointness audit "
             "(pass --allow-overlap to override)\n";
      return kExitValidation;
    }
  }
  const HsiCube cube = ReadEnvi(a.cube, raw);
  RequireSameShape(cube, gt);

  ModelOptions options;
  options.kind = kind;
  options.features = {features, a.window};
  options.k = a.k;
  options.softmax.epochs = a.epochs;
  options.softmax.learning_rate = a.lr;
  options.softmax.lambda = a.lambda;
  options.softmax.seed = a.seed;
  const FittedModel fitted = FitOnSplits(options, cube, gt, splits, threads);
  const ProtocolResult result =
      EvaluateProtocol(*fitted.model, cube, gt, splits, spec, threads);

  std::optional<OverlapEvaluation> overlap;
  if (a.allow_overlap) {
    overlap = EvaluateOverlap(*fitted.model, cube, gt, splits,
                              a.reuse_fraction, a.seed, threads);
  }

  RunMetadata meta;
  meta.model = std::string(ModelKindName(kind));
  meta.features = std::string(FeatureKindName(features));
  meta.window = a.window;
  meta.k = a.k;
  meta.epochs = a.epochs;
  meta.learning_rate = a.lr;
  meta.lambda = a.lambda;
  meta.model_seed = a.seed;
  meta.split_seed = splits.provenance.seed;
  meta.test_ratio = splits.provenance.test_ratio;
  meta.val_ratio = splits.provenance.val_ratio;
  meta.gt_fingerprint = splits.provenance.gt_fingerprint;
  meta.overlap_mode = a.allow_overlap;
  meta.reuse_fraction = a.reuse_fraction;
  meta.overlap_seed = a.seed;
  WriteText(a.out, ProtocolReportToJson(result, meta,
                                        overlap ? &*overlap : nullptr));

  std::vector<const EvalReport*> table = {&result.val.report,
                                          &result.test.report,
                                          &result.full.report};
  if (overlap) {
    table.push_back(&overlap->combined.report);
    table.push_back(&overlap->reused_part);
  }
  out << FormatReportTable(table, a.allow_overlap);

  if (!a.curve.empty()) {
    if (kind != ModelKind::kSoftmax) {
      err << "--curve ignored: only softmax training produces a curve\n";
    } else {
      WriteText(a.curve, CurveToCsv(fitted.curve));
    }
  }
  if (!a.predictions.empty()) {
    std::vector<Label> raster(gt.shape().pixels(), kBackground);
    for (std::size_t i = 0; i < result.full.indices.size(); ++i) {
      raster[result.full.indices[i]] = result.full.predictions[i];
    }
    if (a.predict_background) {
      std::vector<LinearIndex> background;
      for (std::size_t i = 0; i < raster.size(); ++i) {
        if (gt.at(static_cast<LinearIndex>(i)) == kBackground) {
          background.push_back(static_cast<LinearIndex>(i));
        }
      }
      const std::vector<Label> predicted =
          PredictIndices(*fitted.model, cube, background, threads);
      for (std::size_t i = 0; i < background.size(); ++i) {
        raster[background[i]] = predicted[i];
      }
    }
    WritePgm(GroundTruth(gt.rows(), gt.cols(), std::move(raster)),
             a.predictions);
  }
  return kExitOk;
}

int RunMap(const MapArgs& a, std::ostream& out) {
  const MapMode mode = ParseMapMode(a.mode);
  ConfigLine config("map");
  config.Add("gt", a.gt).Add("splits", a.splits).Add("mode", MapModeName(mode));
  if (!a.predictions.empty()) config.Add("predictions", a.predictions);
  config.Add("out", a.out);
  if (!a.palette_csv.empty()) config.Add("palette-csv", a.palette_csv);
  out << config.str() << "\n";

  const GroundTruth gt = ReadGroundTruth(a.gt);
  const SplitIndices splits = LoadSplits(a.splits, &gt);
  ThematicMap map;
  if (a.predictions.empty()) {
    map = RenderTruth(gt, splits, mode);
  } else {
    const GroundTruth predicted = ReadGroundTruth(a.predictions);
    if (predicted.shape() != gt.shape()) {
      throw Error(ErrorCode::kCoverage,
                  "prediction raster shape differs from the ground truth");
    }
    PredictionMap predictions;
    const auto labels = predicted.labels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] != kBackground) {
        predictions.emplace(static_cast<LinearIndex>(i), labels[i]);
      }
    }
    map = Render(gt, splits, predictions, mode);
  }
  WritePpm(map, DefaultPalette(), a.out);
  if (!a.palette_csv.empty()) WriteText(a.palette_csv, PaletteCsv(DefaultPalette()));
  std::size_t colored = 0;
  for (auto v : map.indices) colored += v != 0;
  out << "wrote " << a.out << " (" << map.rows << "x" << map.cols << ", "
      << colored << " colored pixels)\n";
  return kExitOk;
}

int RunBench(const BenchArgs& a, std::ostream& out) {
  const std::size_t threads = ResolveThreadCount(a.threads);
  out << ConfigLine("bench")
             .Add("rows", a.rows)
             .Add("cols", a.cols)
             .Add("bands", a.bands)
             .Add("window", a.window)
             .Add("seed", a.seed)
             .Add("max-peak-mib", a.max_peak_mib)
             .Add("threads", threads)
             .str()
      << "\n";
  using Clock = std::chrono::steady_clock;
  SynthConfig cfg;
  cfg.rows = a.rows;
  cfg.cols = a.cols;
  cfg.bands = a.bands;
  cfg.seed = a.seed;
  auto t0 = Clock::now();
  const auto [cube, gt] = SynthDataset(cfg);
  auto t1 = Clock::now();
  out << "synth            " << std::chrono::duration<double>(t1 - t0).count()
      << " s\n";

  const PatchSpec spec = PatchSpec::FromWindow(a.window);
  std::size_t patches = 0;
  std::size_t peak = 0;
  t0 = Clock::now();
  {
    alloc_probe::PeakScope scope;
    PatchStream stream(cube, gt, spec);
    while (stream.Next()) ++patches;
    peak = scope.PeakAdditionalBytes();
  }
  t1 = Clock::now();
  const double peak_mib = static_cast<double>(peak) / (1024.0 * 1024.0);
  const double materialized_mib = static_cast<double>(patches) *
                                  static_cast<double>(spec.cells() * a.bands) *
                                  sizeof(float) / (1024.0 * 1024.0);
  out << "patch stream     " << std::chrono::duration<double>(t1 - t0).count()
      << " s, " << patches << " patches, peak +" << peak_mib
      << " MiB (materialized would be " << materialized_mib << " MiB)\n";

  t0 = Clock::now();
  const SplitIndices splits = DisjointSplit(gt, SplitConfig{0.7, 0.5, a.seed});
  t1 = Clock::now();
  out << "split            " << std::chrono::duration<double>(t1 - t0).count()
      << " s\n";
  t0 = Clock::now();
  const LeakageReport report =
      BuildLeakageReport(splits, gt, spec, LeakageOptions{10, threads});
  t1 = Clock::now();
  out << "leakage report   " << std::chrono::duration<double>(t1 - t0).count()
      << " s, test windows overlapping train "
      << report.test_vs_train.overlapping << "/"
      << report.test_vs_train.evaluated << "\n";

  if (a.max_peak_mib > 0 && peak_mib > a.max_peak_mib) {
    out << "FAIL: streaming peak " << peak_mib << " MiB exceeds "
        << a.max_peak_mib << " MiB\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Disjoint sampling, leakage auditing and evaluation for "
               "hyperspectral image classification"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a seeded synthetic scene");
  synth_cmd->add_option("--rows", synth.cfg.rows)->capture_default_str();
  synth_cmd->add_option("--cols", synth.cfg.cols)->capture_default_str();
  synth_cmd->add_option("--bands", synth.cfg.bands)->capture_default_str();
  synth_cmd->add_option("--classes", synth.cfg.num_classes)->capture_default_str();
  synth_cmd->add_option("--blobs", synth.cfg.blob_count)->capture_default_str();
  synth_cmd->add_option("--separation", synth.cfg.class_separation)->capture_default_str();
  synth_cmd->add_option("--noise", synth.cfg.noise_sigma)->capture_default_str();
  synth_cmd->add_option("--seed", synth.cfg.seed)->required();
  synth_cmd->add_option("--interleave", synth.interleave)->capture_default_str();
  synth_cmd->add_option("--out-prefix", synth.out_prefix)->required();

  SplitArgs split;
  auto* split_cmd = app.add_subcommand("split", "Disjoint per-class train/val/test split");
  split_cmd->add_option("--gt", split.gt)->required();
  split_cmd->add_option("--test-ratio", split.test_ratio)->capture_default_str();
  split_cmd->add_option("--val-ratio", split.val_ratio)->capture_default_str();
  split_cmd->add_option("--seed", split.seed)->required();
  split_cmd->add_option("--out", split.out)->required();

  AuditArgs audit;
  auto* audit_cmd = app.add_subcommand("audit", "Verify a split and measure patch overlap");
  audit_cmd->add_option("--gt", audit.gt)->required();
  audit_cmd->add_option("--splits", audit.splits)->required();
  audit_cmd->add_option("--window", audit.window)->capture_default_str();
  audit_cmd->add_option("--top-k", audit.top_k)->capture_default_str();
  audit_cmd->add_option("--out", audit.out);
  audit_cmd->add_option("--threads", audit.threads);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Fit on train, report val / test / full scene");
  eval_cmd->add_option("--cube", eval.cube, "ENVI header")->required();
  eval_cmd->add_option("--raw", eval.raw, "ENVI raw file (default: next to header)");
  eval_cmd->add_option("--gt", eval.gt)->required();
  eval_cmd->add_option("--splits", eval.splits)->required();
  eval_cmd->add_option("--model", eval.model)
      ->check(CLI::IsMember({"centroid", "knn", "softmax"}))
      ->capture_default_str();
  eval_cmd->add_option("--features", eval.features)
      ->check(CLI::IsMember({"spectrum", "patch"}));
  eval_cmd->add_option("--window", eval.window)->capture_default_str();
  eval_cmd->add_option("--k", eval.k)->capture_default_str();
  eval_cmd->add_option("--epochs", eval.epochs)->capture_default_str();
  eval_cmd->add_option("--lr", eval.lr)->capture_default_str();
  eval_cmd->add_option("--lambda", eval.lambda)->capture_default_str();
  eval_cmd->add_option("--seed", eval.seed)->required();
  eval_cmd->add_option("--out", eval.out)->required();
  eval_cmd->add_option("--curve", eval.curve, "softmax training curve CSV");
  eval_cmd->add_option("--predictions", eval.predictions, "predicted label raster (PGM)");
  eval_cmd->add_flag("--predict-background", eval.predict_background);
  eval_cmd->add_flag("--allow-overlap", eval.allow_overlap);
  eval_cmd->add_option("--reuse-fraction", eval.reuse_fraction)->capture_default_str();
  eval_cmd->add_option("--threads", eval.threads);

  MapArgs map;
  auto* map_cmd = app.add_subcommand("map", "Render a thematic map as PPM");
  map_cmd->add_option("--gt", map.gt)->required();
  map_cmd->add_option("--splits", map.splits)->required();
  map_cmd->add_option("--predictions", map.predictions);
  map_cmd->add_option("--mode", map.mode)
      ->check(CLI::IsMember({"val_only", "test_only", "full_labeled", "full_scene"}))
      ->capture_default_str();
  map_cmd->add_option("--out", map.out)->required();
  map_cmd->add_option("--palette-csv", map.palette_csv);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time the pipeline on a synthetic cube");
  bench_cmd->add_option("--rows", bench.rows)->capture_default_str();
  bench_cmd->add_option("--cols", bench.cols)->capture_default_str();
  bench_cmd->add_option("--bands", bench.bands)->capture_default_str();
  bench_cmd->add_option("--window", bench.window)->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed)->required();
  bench_cmd->add_option("--max-peak-mib", bench.max_peak_mib);
  bench_cmd->add_option("--threads", bench.threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*synth_cmd) return RunSynth(synth, out);
    if (*split_cmd) return RunSplit(split, out);
    if (*audit_cmd) return RunAudit(audit, out, err);
    if (*eval_cmd) return RunEval(eval, out, err);
    if (*map_cmd) return RunMap(map, out);
    if (*bench_cmd) return RunBench(bench, out);
  } catch (const Error& e) {
    err << "hsidj: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "hsidj: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace hsidj::cli
