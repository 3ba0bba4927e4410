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

#include <iomanip>
#include <sstream>
#include <unordered_set>

#include "file_util.h"
#include "hsidj/audit.h"
#include "hsidj/error.h"
#include "hsidj/splitting.h"
#include "json.hpp"

namespace hsidj {
namespace {

constexpr int kSplitFormatVersion = 1;

[[noreturn]] void Corrupt(const std::string& why) {
  throw Error(ErrorCode::kCorruptSplit, why);
}

std::uint64_t ParseHex64(const std::string& text) {
  if (text.size() != 16) Corrupt("gt_fingerprint must be 16 hex digits");
  std::uint64_t v = 0;
  for (char c : text) {
    v <<= 4;
    if (c >= '0' && c <= '9') v |= static_cast<std::uint64_t>(c - '0');
    else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint64_t>(c - 'a' + 10);
    else Corrupt("gt_fingerprint must be lowercase hex");
  }
  return v;
}

// Invariants that can be checked without the ground truth.
void CheckStandalone(const SplitIndices& s) {
  const std::size_t pixels = s.shape().pixels();
  std::unordered_set<LinearIndex> seen;
  Label previous = 0;
  for (const ClassSplit& c : s.classes) {
    if (c.label == kBackground) Corrupt("class record with label 0");
    if (c.label <= previous) Corrupt("class labels must be strictly ascending");
    previous = c.label;
    for (const auto* list : {&c.train, &c.val, &c.test}) {
      for (LinearIndex idx : *list) {
        if (idx >= pixels) {
          Corrupt("index " + std::to_string(idx) + " outside " +
                  std::to_string(s.provenance.rows) + "x" +
                  std::to_string(s.provenance.cols) + " raster");
        }
        if (!seen.insert(idx).second) {
          Corrupt("index " + std::to_string(idx) +
                  " appears more than once across sets");
        }
      }
    }
    SplitCounts want;
    try {
      want = ComputeSplitCounts(c.size(), s.provenance.test_ratio,
                                s.provenance.val_ratio, c.label);
    } catch (const Error& e) {
      Corrupt(e.what());
    }
    if (want != SplitCounts{c.train.size(), c.val.size(), c.test.size()}) {
      Corrupt("class " + std::to_string(c.label) +
              " set sizes do not match the recorded ratios");
    }
  }
}

}  // namespace

std::string SplitsToJson(const SplitIndices& splits) {
  const SplitProvenance& p = splits.provenance;
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << p.gt_fingerprint;
  nlohmann::json classes = nlohmann::json::array();
  for (const ClassSplit& c : splits.classes) {
    classes.push_back({{"label", c.label},
                       {"train", c.train},
                       {"val", c.val},
                       {"test", c.test}});
  }
  nlohmann::json j = {{"format", "hsidj-split"},
                      {"version", kSplitFormatVersion},
                      {"seed", p.seed},
                      {"test_ratio", p.test_ratio},
                      {"val_ratio", p.val_ratio},
                      {"gt_fingerprint", hex.str()},
                      {"rows", p.rows},
                      {"cols", p.cols},
                      {"classes", classes}};
  return j.dump() + "\n";
}

void SaveSplits(const SplitIndices& splits, const std::filesystem::path& path) {
  internal::WriteFileBytes(path, SplitsToJson(splits));
}

SplitIndices ParseSplits(const std::string& text) {
  SplitIndices s;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != "hsidj-split") {
      Corrupt("not an hsidj split file");
    }
    if (j.at("version").get<int>() != kSplitFormatVersion) {
      Corrupt("unsupported split file version");
    }
    s.provenance.seed = j.at("seed").get<std::uint64_t>();
    s.provenance.test_ratio = j.at("test_ratio").get<double>();
    s.provenance.val_ratio = j.at("val_ratio").get<double>();
    s.provenance.gt_fingerprint =
        ParseHex64(j.at("gt_fingerprint").get<std::string>());
    s.provenance.rows = j.at("rows").get<std::size_t>();
    s.provenance.cols = j.at("cols").get<std::size_t>();
    for (const auto& c : j.at("classes")) {
      ClassSplit cls;
      cls.label = c.at("label").get<Label>();
      cls.train = c.at("train").get<std::vector<LinearIndex>>();
      cls.val = c.at("val").get<std::vector<LinearIndex>>();
      cls.test = c.at("test").get<std::vector<LinearIndex>>();
      s.classes.push_back(std::move(cls));
    }
  } catch (const nlohmann::json::exception& e) {
    Corrupt(std::string("malformed split file: ") + e.what());
  }
  return s;
}

SplitIndices ReadSplitsUnchecked(const std::filesystem::path& path) {
  const std::string text = internal::ReadFileBytes(path);
  try {
    return ParseSplits(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + std::string(e.what()));
  }
}

SplitIndices LoadSplits(const std::filesystem::path& path,
                        const GroundTruth* gt) {
  SplitIndices s = ReadSplitsUnchecked(path);
  try {
    SplitConfig{s.provenance.test_ratio, s.provenance.val_ratio, 0}.Validate();
  } catch (const Error& e) {
    Corrupt(path.string() + ": " + e.what());
  }
  try {
    CheckStandalone(s);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + std::string(e.what()));
  }
  if (gt != nullptr) {
    if (s.provenance.gt_fingerprint != GroundTruthFingerprint(*gt) ||
        s.shape() != gt->shape()) {
      throw Error(ErrorCode::kWrongDataset,
                  path.string() + ": split was made for a different ground truth");
    }
    const DisjointnessCheck check = VerifyDisjoint(s, *gt);
    if (!check.passed()) {
      Corrupt(path.string() + ": " + check.violations.front());
    }
  }
  return s;
}

}  // namespace hsidj
