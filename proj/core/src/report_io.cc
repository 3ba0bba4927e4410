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

#include "hsidj/report_io.h"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "json.hpp"

namespace hsidj {
namespace {

constexpr char kOverlapWatermark[] = "OVERLAP MODE";

nlohmann::json ReportJson(const EvalReport& r) {
  nlohmann::json classes = nlohmann::json::array();
  for (const ClassMetrics& c : r.per_class) {
    nlohmann::json row = {{"label", c.label},
                          {"support", c.support},
                          {"predicted", c.predicted},
                          {"correct", c.correct},
                          {"precision", c.precision}};
    row["accuracy"] = c.recall ? nlohmann::json(*c.recall) : nlohmann::json();
    row["f1"] = c.f1 ? nlohmann::json(*c.f1) : nlohmann::json();
    classes.push_back(std::move(row));
  }
  return {{"set", r.set_name},   {"samples", r.samples},
          {"classes", classes},  {"kappa", r.kappa},
          {"oa", r.oa},          {"aa", r.aa},
          {"kappa_degenerate", r.kappa_degenerate},
          {"time_s", r.wall_time_seconds}};
}

}  // namespace

std::string FormatFingerprint(std::uint64_t fingerprint) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << fingerprint;
  return out.str();
}

std::string ProtocolReportToJson(const ProtocolResult& result,
                                 const RunMetadata& meta,
                                 const OverlapEvaluation* overlap) {
  nlohmann::json config = {{"model", meta.model},
                           {"features", meta.features},
                           {"window", meta.window},
                           {"k", meta.k},
                           {"epochs", meta.epochs},
                           {"lr", meta.learning_rate},
                           {"lambda", meta.lambda},
                           {"model_seed", meta.model_seed},
                           {"split_seed", meta.split_seed},
                           {"test_ratio", meta.test_ratio},
                           {"val_ratio", meta.val_ratio},
                           {"gt_fingerprint",
                            FormatFingerprint(meta.gt_fingerprint)},
                           {"overlap_mode", meta.overlap_mode}};
  nlohmann::json full = ReportJson(result.full.report);
  full["includes_training_pixels"] = true;
  nlohmann::json j = {{"format", "hsidj-eval"},
                      {"version", 1},
                      {"config", config},
                      {"sets",
                       {{"val", ReportJson(result.val.report)},
                        {"test", ReportJson(result.test.report)},
                        {"full", full},
                        {"train", ReportJson(result.train_part.report)}}}};
  if (overlap != nullptr) {
    j["watermark"] = kOverlapWatermark;
    j["config"]["reuse_fraction"] = meta.reuse_fraction;
    j["config"]["overlap_seed"] = meta.overlap_seed;
    j["overlap"] = {{"combined", ReportJson(overlap->combined.report)},
                    {"honest_part", ReportJson(overlap->honest_part)},
                    {"reused_part", ReportJson(overlap->reused_part)}};
  }
  return j.dump(2) + "\n";
}

std::string FormatReportTable(std::span<const EvalReport* const> reports,
                              bool overlap_mode) {
  std::ostringstream out;
  if (overlap_mode) {
    out << "*** " << kOverlapWatermark
        << ": training pixels were re-used for evaluation ***\n";
  }
  constexpr int kName = 12;
  int col = 14;
  for (const EvalReport* r : reports) {
    col = std::max(col, static_cast<int>(r->set_name.size()) + 2);
  }
  const int kCol = col;
  out << std::left << std::setw(kName) << "Class" << std::right;
  for (const EvalReport* r : reports) out << std::setw(kCol) << r->set_name;
  out << "\n" << std::fixed << std::setprecision(2);

  std::map<Label, std::vector<const ClassMetrics*>> rows;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (const ClassMetrics& c : reports[i]->per_class) {
      auto& row = rows[c.label];
      row.resize(reports.size(), nullptr);
      row[i] = &c;
    }
  }
  for (const auto& [label, cells] : rows) {
    out << std::left << std::setw(kName) << label << std::right;
    for (const ClassMetrics* c : cells) {
      if (c != nullptr && c->recall) {
        out << std::setw(kCol) << *c->recall;
      } else {
        out << std::setw(kCol) << "-";
      }
    }
    out << "\n";
  }
  auto summary = [&](const char* name, auto field, int precision) {
    out << std::left << std::setw(kName) << name << std::right
        << std::setprecision(precision);
    for (const EvalReport* r : reports) out << std::setw(kCol) << field(*r);
    out << "\n";
  };
  summary("Kappa", [](const EvalReport& r) { return r.kappa; }, 2);
  summary("OA", [](const EvalReport& r) { return r.oa; }, 2);
  summary("AA", [](const EvalReport& r) { return r.aa; }, 2);
  summary("Time (S)", [](const EvalReport& r) { return r.wall_time_seconds; },
          4);
  return out.str();
}

}  // namespace hsidj
