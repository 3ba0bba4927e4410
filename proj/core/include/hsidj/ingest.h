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

#ifndef HSIDJ_INGEST_H_
#define HSIDJ_INGEST_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hsidj/raster.h"

namespace hsidj {

enum class Interleave { kBsq, kBil, kBip };

std::string_view InterleaveName(Interleave interleave);
// Throws kConfig for anything other than bsq / bil / bip (case-insensitive).
Interleave ParseInterleave(std::string_view name);

enum class ByteOrder { kLittle, kBig };

// Supported ENVI "data type" codes.
enum class EnviDataType : int {
  kUint8 = 1,
  kInt16 = 2,
  kFloat32 = 4,
  kUint16 = 12,
};

std::size_t ElementSize(EnviDataType type);

struct EnviHeader {
  std::size_t samples = 0;  // columns
  std::size_t lines = 0;    // rows
  std::size_t bands = 0;
  Interleave interleave = Interleave::kBsq;
  EnviDataType data_type = EnviDataType::kFloat32;
  ByteOrder byte_order = ByteOrder::kLittle;
  std::size_t header_offset = 0;

  std::size_t payload_bytes() const {
    return samples * lines * bands * ElementSize(data_type);
  }
};

// Parses ENVI header text. Malformed lines raise kParse with the 1-based
// line number; data types outside EnviDataType raise kUnsupportedFormat.
EnviHeader ParseEnviHeader(std::string_view text);
EnviHeader ReadEnviHeader(const std::filesystem::path& header_path);

// Reads any supported interleave / data type / byte order into the canonical
// band-interleaved-by-pixel float cube.
HsiCube ReadEnvi(const std::filesystem::path& header_path,
                 const std::filesystem::path& raw_path);

// Writes float32, little-endian, in the requested interleave.
void WriteEnvi(const HsiCube& cube, const std::filesystem::path& header_path,
               const std::filesystem::path& raw_path, Interleave interleave);

// Binary PGM (P5). 1-byte samples for maxval < 256, else 2-byte big-endian.
GroundTruth ReadPgm(const std::filesystem::path& path);
GroundTruth DecodePgm(std::string_view bytes);
std::string EncodePgm(const GroundTruth& labels);
void WritePgm(const GroundTruth& labels, const std::filesystem::path& path);

// Single-band integer ENVI label raster (uint8, int16 or uint16).
GroundTruth ReadGroundTruthEnvi(const std::filesystem::path& header_path,
                                const std::filesystem::path& raw_path);

// Sniffs the file: "P5" magic selects PGM, an "ENVI" first line selects an
// ENVI header whose raw file is found next to it (same stem with .raw, .img,
// .dat, or no extension).
GroundTruth ReadGroundTruth(const std::filesystem::path& path);

std::filesystem::path FindEnviRaw(const std::filesystem::path& header_path);

struct SynthConfig {
  std::size_t rows = 64;
  std::size_t cols = 64;
  std::size_t bands = 16;
  std::size_t num_classes = 4;
  std::size_t blob_count = 12;
  double class_separation = 1.0;
  double noise_sigma = 0.5;
  std::uint64_t seed = 0;

  // Throws kConfig for unsatisfiable configurations.
  void Validate() const;
};

// Mean spectrum of class `label` (0 gives the background spectrum).
std::vector<double> SynthClassMean(const SynthConfig& cfg, Label label);

// Seeded Voronoi scene: blob_count distinct sites in the interior, the first
// num_classes sites take labels 1..num_classes and the rest draw a label
// uniformly; each interior pixel takes its nearest site's label (ties go to
// the lower site index) and the one-pixel border is background. Pixel
// spectra are the class mean plus i.i.d. N(0, noise_sigma^2) per band.
std::pair<HsiCube, GroundTruth> SynthDataset(const SynthConfig& cfg);

}  // namespace hsidj

#endif  // HSIDJ_INGEST_H_
