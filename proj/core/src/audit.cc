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

#include "hsidj/audit.h"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <sstream>

#include "hsidj/error.h"
#include "hsidj/parallel.h"
#include "json.hpp"

namespace hsidj {
namespace {

constexpr std::size_t kListedIndices = 20;

std::string Describe(const std::string& what,
                     const std::vector<LinearIndex>& indices) {
  std::ostringstream out;
  out << what << " (" << indices.size() << "):";
  for (std::size_t i = 0; i < indices.size() && i < kListedIndices; ++i) {
    out << ' ' << indices[i];
  }
  if (indices.size() > kListedIndices) out << " ...";
  return out.str();
}

enum SetId : std::uint8_t { kNone = 0, kTrain = 1, kVal = 2, kTest = 4 };

bool OffenderBefore(const OverlapPair& a, const OverlapPair& b) {
  if (a.shared != b.shared) return a.shared > b.shared;
  if (a.query != b.query) return a.query < b.query;
  return a.train < b.train;
}

}  // namespace

DisjointnessCheck VerifyDisjoint(const SplitIndices& splits,
                                 const GroundTruth& gt) {
  DisjointnessCheck check;
  const std::size_t pixels = gt.shape().pixels();

  if (splits.shape() != gt.shape()) {
    check.shape_matches = false;
    check.violations.push_back(
        "split was built for a " + std::to_string(splits.provenance.rows) +
        "x" + std::to_string(splits.provenance.cols) +
        " raster, ground truth is " + std::to_string(gt.rows()) + "x" +
        std::to_string(gt.cols()));
  }
  if (splits.provenance.gt_fingerprint != GroundTruthFingerprint(gt)) {
    check.fingerprint_matches = false;
    check.violations.push_back("ground-truth fingerprint mismatch");
  }

  // Membership bitmask per pixel; a pixel seen twice in one set is a
  // duplicate, seen in two sets an intersection.
  std::vector<std::uint8_t> membership(pixels, kNone);
  std::map<Label, std::size_t> class_sizes;
  for (const ClassSplit& cls : splits.classes) {
    const std::pair<const std::vector<LinearIndex>*, SetId> sets[] = {
        {&cls.train, kTrain}, {&cls.val, kVal}, {&cls.test, kTest}};
    for (const auto& [list, id] : sets) {
      for (LinearIndex idx : *list) {
        if (idx >= pixels) {
          check.out_of_range.push_back(idx);
          continue;
        }
        std::uint8_t& m = membership[idx];
        if (m & id) {
          check.duplicates.push_back(idx);
        } else {
          auto crosses = [m, id](std::uint8_t a, std::uint8_t b) {
            return ((m & a) && id == b) || ((m & b) && id == a);
          };
          if (crosses(kTrain, kVal)) check.train_val_overlap.push_back(idx);
          if (crosses(kTrain, kTest)) check.train_test_overlap.push_back(idx);
          if (crosses(kVal, kTest)) check.val_test_overlap.push_back(idx);
          m |= id;
        }
        if (gt.at(idx) != cls.label) check.mislabeled.push_back(idx);
      }
    }
    class_sizes[cls.label] += cls.size();
  }
  auto unique_sorted = [](std::vector<LinearIndex>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  unique_sorted(check.train_val_overlap);
  unique_sorted(check.train_test_overlap);
  unique_sorted(check.val_test_overlap);
  unique_sorted(check.duplicates);
  unique_sorted(check.mislabeled);
  unique_sorted(check.out_of_range);

  const auto labels = gt.labels();
  std::map<Label, std::size_t> gt_sizes;
  for (std::size_t i = 0; i < pixels; ++i) {
    if (labels[i] == kBackground) continue;
    ++gt_sizes[labels[i]];
    if (membership[i] == kNone) {
      check.missing.push_back(static_cast<LinearIndex>(i));
    }
  }

  check.indices_in_range = check.out_of_range.empty();
  check.no_duplicates = check.duplicates.empty();
  check.train_val_disjoint = check.train_val_overlap.empty();
  check.train_test_disjoint = check.train_test_overlap.empty();
  check.val_test_disjoint = check.val_test_overlap.empty();
  check.labels_consistent = check.mislabeled.empty();
  check.union_complete = check.missing.empty();

  if (!check.indices_in_range) {
    check.violations.push_back(
        Describe("indices outside the raster", check.out_of_range));
  }
  if (!check.no_duplicates) {
    check.violations.push_back(
        Describe("indices repeated within one set", check.duplicates));
  }
  if (!check.train_val_disjoint) {
    check.violations.push_back(
        Describe("train/val intersection not empty", check.train_val_overlap));
  }
  if (!check.train_test_disjoint) {
    check.violations.push_back(Describe("train/test intersection not empty",
                                        check.train_test_overlap));
  }
  if (!check.val_test_disjoint) {
    check.violations.push_back(
        Describe("val/test intersection not empty", check.val_test_overlap));
  }
  if (!check.labels_consistent) {
    check.violations.push_back(
        Describe("indices whose label differs from their class",
                 check.mislabeled));
  }
  if (!check.union_complete) {
    check.violations.push_back(
        Describe("labeled pixels missing from every set", check.missing));
  }

  for (const ClassSplit& cls : splits.classes) {
    std::string problem;
    const auto it = gt_sizes.find(cls.label);
    if (it == gt_sizes.end()) {
      problem = "label absent from ground truth";
    } else {
      try {
        const SplitCounts want =
            ComputeSplitCounts(it->second, splits.provenance.test_ratio,
                               splits.provenance.val_ratio, cls.label);
        const SplitCounts got{cls.train.size(), cls.val.size(),
                              cls.test.size()};
        if (want != got) {
          problem = "counts (" + std::to_string(got.train) + ", " +
                    std::to_string(got.val) + ", " + std::to_string(got.test) +
                    ") differ from expected (" + std::to_string(want.train) +
                    ", " + std::to_string(want.val) + ", " +
                    std::to_string(want.test) + ")";
        }
      } catch (const Error& e) {
        problem = e.what();
      }
    }
    if (!problem.empty()) {
      check.counts_conform = false;
      check.violations.push_back("class " + std::to_string(cls.label) + ": " +
                                 problem);
    }
  }
  for (const auto& [label, size] : gt_sizes) {
    if (!class_sizes.contains(label)) {
      check.counts_conform = false;
      check.violations.push_back("class " + std::to_string(label) +
                                 " has no split record");
    }
  }
  return check;
}

std::size_t SharedPixels(const PixelCoord& a, const PixelCoord& b,
                         const PatchSpec& spec) {
  const long w = static_cast<long>(spec.window);
  const long dr = std::labs(static_cast<long>(a.row) - static_cast<long>(b.row));
  const long dc = std::labs(static_cast<long>(a.col) - static_cast<long>(b.col));
  return static_cast<std::size_t>(std::max(0L, w - dr) * std::max(0L, w - dc));
}

SetOverlap MeasureOverlap(std::span<const LinearIndex> queries,
                          std::span<const LinearIndex> train,
                          const RasterShape& shape, const PatchSpec& spec,
                          const LeakageOptions& options) {
  const std::size_t cell = spec.window;
  const std::size_t grid_rows = (shape.rows + cell - 1) / cell;
  const std::size_t grid_cols = (shape.cols + cell - 1) / cell;
  std::vector<std::vector<LinearIndex>> grid(grid_rows * grid_cols);
  for (LinearIndex t : train) {
    const PixelCoord p = FromLinear(t, shape);
    grid[(p.row / cell) * grid_cols + p.col / cell].push_back(t);
  }

  std::vector<OverlapPair> best(queries.size());
  ParallelFor(queries.size(), options.threads,
              [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const PixelCoord q = FromLinear(queries[i], shape);
      const std::size_t gr = q.row / cell;
      const std::size_t gc = q.col / cell;
      OverlapPair partner{queries[i], 0, 0};
      for (std::size_t r = gr > 0 ? gr - 1 : 0;
           r <= std::min(gr + 1, grid_rows - 1); ++r) {
        for (std::size_t c = gc > 0 ? gc - 1 : 0;
             c <= std::min(gc + 1, grid_cols - 1); ++c) {
          for (LinearIndex t : grid[r * grid_cols + c]) {
            const std::size_t shared =
                SharedPixels(q, {t / shape.cols, t % shape.cols}, spec);
            if (shared == 0) continue;
            if (shared > partner.shared ||
                (shared == partner.shared && t < partner.train)) {
              partner.train = t;
              partner.shared = shared;
            }
          }
        }
      }
      best[i] = partner;
    }
  });

  SetOverlap out;
  out.evaluated = queries.size();
  double fraction_sum = 0.0;
  std::vector<OverlapPair> offenders;
  for (const OverlapPair& p : best) {
    if (p.shared == 0) continue;
    ++out.overlapping;
    fraction_sum += static_cast<double>(p.shared) /
                    static_cast<double>(spec.cells());
    offenders.push_back(p);
  }
  if (out.evaluated > 0) {
    out.overlapping_fraction = static_cast<double>(out.overlapping) /
                               static_cast<double>(out.evaluated);
    out.mean_shared_pixel_fraction =
        fraction_sum / static_cast<double>(out.evaluated);
  }
  const std::size_t keep = std::min(options.top_k, offenders.size());
  std::partial_sort(offenders.begin(), offenders.begin() + keep,
                    offenders.end(), OffenderBefore);
  offenders.resize(keep);
  out.worst_offenders = std::move(offenders);
  return out;
}

LeakageReport BuildLeakageReport(const SplitIndices& splits,
                                 const GroundTruth& gt, const PatchSpec& spec,
                                 const LeakageOptions& options) {
  const DisjointnessCheck check = VerifyDisjoint(splits, gt);
  LeakageReport report;
  report.train_val_disjoint = check.train_val_disjoint;
  report.train_test_disjoint = check.train_test_disjoint;
  report.val_test_disjoint = check.val_test_disjoint;
  report.union_complete = check.union_complete;
  report.counts_conform = check.counts_conform;
  report.window = spec.window;
  const std::vector<LinearIndex> train = splits.AllTrain();
  const std::vector<LinearIndex> val = splits.AllVal();
  const std::vector<LinearIndex> test = splits.AllTest();
  report.test_vs_train = MeasureOverlap(test, train, gt.shape(), spec, options);
  report.val_vs_train = MeasureOverlap(val, train, gt.shape(), spec, options);
  return report;
}

namespace {

nlohmann::json OverlapJson(const SetOverlap& o) {
  nlohmann::json offenders = nlohmann::json::array();
  for (const OverlapPair& p : o.worst_offenders) {
    offenders.push_back(
        {{"index", p.query}, {"train_index", p.train}, {"shared_pixels", p.shared}});
  }
  return {{"evaluated", o.evaluated},
          {"overlapping_train", o.overlapping},
          {"overlapping_fraction", o.overlapping_fraction},
          {"mean_shared_pixel_fraction", o.mean_shared_pixel_fraction},
          {"worst_offenders", offenders}};
}

std::string Hex64(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << v;
  return out.str();
}

}  // namespace

std::string LeakageReportToJson(const LeakageReport& report,
                                const SplitIndices& splits) {
  nlohmann::json j = {
      {"format", "hsidj-leakage"},
      {"version", 1},
      {"seed", splits.provenance.seed},
      {"test_ratio", splits.provenance.test_ratio},
      {"val_ratio", splits.provenance.val_ratio},
      {"gt_fingerprint", Hex64(splits.provenance.gt_fingerprint)},
      {"window", report.window},
      {"index_disjoint",
       {{"train_val", report.train_val_disjoint},
        {"train_test", report.train_test_disjoint},
        {"val_test", report.val_test_disjoint}}},
      {"union_complete", report.union_complete},
      {"counts_conform", report.counts_conform},
      {"test_vs_train", OverlapJson(report.test_vs_train)},
      {"val_vs_train", OverlapJson(report.val_vs_train)},
  };
  return j.dump(2) + "\n";
}

std::string FormatLeakageSummary(const LeakageReport& report,
                                 const DisjointnessCheck& check) {
  std::ostringstream out;
  auto yes_no = [](bool ok) { return ok ? "ok" : "FAIL"; };
  out << "index disjointness  train/val " << yes_no(report.train_val_disjoint)
      << "  train/test " << yes_no(report.train_test_disjoint) << "  val/test "
      << yes_no(report.val_test_disjoint) << "\n";
  out << "union complete      " << yes_no(report.union_complete) << "\n";
  out << "per-class counts    " << yes_no(report.counts_conform) << "\n";
  for (const std::string& v : check.violations) out << "  violation: " << v << "\n";
  out << std::fixed << std::setprecision(4);
  const std::pair<const char*, const SetOverlap*> sets[] = {
      {"test", &report.test_vs_train}, {"val", &report.val_vs_train}};
  for (const auto& [name, o] : sets) {
    out << name << " windows overlapping train (WS=" << report.window
        << "): " << o->overlapping << " / " << o->evaluated << " ("
        << 100.0 * o->overlapping_fraction << "%), mean shared fraction "
        << o->mean_shared_pixel_fraction << "\n";
    for (const OverlapPair& p : o->worst_offenders) {
      out << "    " << name << " " << p.query << " <-> train " << p.train
          << " shares " << p.shared << " px\n";
    }
  }
  return out.str();
}

}  // namespace hsidj
