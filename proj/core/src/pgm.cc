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

#include <algorithm>
#include <cctype>
#include <string>

#include "file_util.h"
#include "hsidj/error.h"
#include "hsidj/ingest.h"

namespace hsidj {
namespace {

class PgmHeaderReader {
 public:
  explicit PgmHeaderReader(std::string_view bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then reads a decimal integer.
  std::size_t ReadInt(const char* what) {
    for (;;) {
      while (pos_ < bytes_.size() &&
             std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
        ++pos_;
      }
      if (pos_ < bytes_.size() && bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
        continue;
      }
      break;
    }
    std::size_t value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() &&
           std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
      if (value > 1'000'000'000) {
        throw Error(ErrorCode::kFormat, std::string("PGM ") + what +
                                            " out of range");
      }
      ++pos_;
      ++digits;
    }
    if (digits == 0) {
      throw Error(ErrorCode::kFormat,
                  std::string("PGM header: expected ") + what);
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void ConsumeSingleWhitespace() {
    if (pos_ >= bytes_.size() ||
        !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw Error(ErrorCode::kFormat,
                  "PGM header: missing whitespace after maxval");
    }
    ++pos_;
  }

  std::size_t pos() const { return pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

GroundTruth DecodePgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw Error(ErrorCode::kFormat, "missing P5 magic");
  }
  PgmHeaderReader reader(bytes);
  const std::size_t width = reader.ReadInt("width");
  const std::size_t height = reader.ReadInt("height");
  const std::size_t maxval = reader.ReadInt("maxval");
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::kFormat, "PGM dimensions must be >= 1");
  }
  if (maxval == 0 || maxval > 65535) {
    throw Error(ErrorCode::kFormat,
                "PGM maxval must lie in [1, 65535], got " +
                    std::to_string(maxval));
  }
  reader.ConsumeSingleWhitespace();

  const std::size_t sample_bytes = maxval < 256 ? 1 : 2;
  const std::size_t expected = width * height * sample_bytes;
  const std::size_t available = bytes.size() - reader.pos();
  if (available < expected) {
    throw Error(ErrorCode::kIntegrity,
                "PGM raster truncated: " + std::to_string(available) +
                    " of " + std::to_string(expected) + " bytes");
  }
  const auto* data =
      reinterpret_cast<const unsigned char*>(bytes.data()) + reader.pos();
  std::vector<Label> labels(width * height);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::size_t v = sample_bytes == 1
                        ? data[i]
                        : (static_cast<std::size_t>(data[2 * i]) << 8) |
                              data[2 * i + 1];
    if (v > maxval) {
      throw Error(ErrorCode::kFormat, "PGM sample " + std::to_string(v) +
                                          " exceeds maxval " +
                                          std::to_string(maxval));
    }
    labels[i] = static_cast<Label>(v);
  }
  return GroundTruth(height, width, std::move(labels));
}

GroundTruth ReadPgm(const std::filesystem::path& path) {
  const std::string bytes = internal::ReadFileBytes(path);
  try {
    return DecodePgm(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + std::string(e.what()));
  }
}

std::string EncodePgm(const GroundTruth& labels) {
  const auto values = labels.labels();
  std::size_t maxval = 1;
  for (Label v : values) maxval = std::max<std::size_t>(maxval, v);
  std::string out = "P5\n" + std::to_string(labels.cols()) + " " +
                    std::to_string(labels.rows()) + "\n" +
                    std::to_string(maxval) + "\n";
  const std::size_t header = out.size();
  if (maxval < 256) {
    out.resize(header + values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      out[header + i] = static_cast<char>(values[i]);
    }
  } else {
    out.resize(header + 2 * values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      out[header + 2 * i] = static_cast<char>(values[i] >> 8);
      out[header + 2 * i + 1] = static_cast<char>(values[i] & 0xff);
    }
  }
  return out;
}

void WritePgm(const GroundTruth& labels, const std::filesystem::path& path) {
  internal::WriteFileBytes(path, EncodePgm(labels));
}

}  // namespace hsidj
