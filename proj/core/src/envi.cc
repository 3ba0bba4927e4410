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
#include <bit>
#include <cctype>
#include <charconv>
#include <cstring>
#include <map>
#include <sstream>
#include <string>

#include "file_util.h"
#include "hsidj/error.h"
#include "hsidj/ingest.h"

namespace hsidj {
namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

// "data   Type" -> "data type"
std::string NormalizeKey(std::string_view key) {
  std::string out;
  bool pending_space = false;
  for (char c : Trim(key)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

struct HeaderEntry {
  std::string value;
  std::size_t line = 0;
};

std::size_t ParseCount(const HeaderEntry& entry, std::string_view key) {
  std::size_t value = 0;
  const char* begin = entry.value.data();
  const char* end = begin + entry.value.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kParse, "line " + std::to_string(entry.line) +
                                       ": '" + std::string(key) +
                                       "' expects a non-negative integer, got '" +
                                       entry.value + "'");
  }
  return value;
}

template <typename T>
T LoadScalar(const unsigned char* p, ByteOrder order) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, p, sizeof(T));
  const bool file_little = order == ByteOrder::kLittle;
  const bool host_little = std::endian::native == std::endian::little;
  if (file_little != host_little) std::reverse(buf, buf + sizeof(T));
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

double DecodeElement(const unsigned char* p, EnviDataType type,
                     ByteOrder order) {
  switch (type) {
    case EnviDataType::kUint8: return *p;
    case EnviDataType::kInt16: return LoadScalar<std::int16_t>(p, order);
    case EnviDataType::kUint16: return LoadScalar<std::uint16_t>(p, order);
    case EnviDataType::kFloat32: return LoadScalar<float>(p, order);
  }
  return 0.0;
}

// Position of element (line, sample, band) in the raw payload, in elements.
std::size_t RawOffset(const EnviHeader& h, std::size_t line,
                      std::size_t sample, std::size_t band) {
  switch (h.interleave) {
    case Interleave::kBsq:
      return (band * h.lines + line) * h.samples + sample;
    case Interleave::kBil:
      return (line * h.bands + band) * h.samples + sample;
    case Interleave::kBip:
      return (line * h.samples + sample) * h.bands + band;
  }
  return 0;
}

std::string LoadPayload(const EnviHeader& header,
                        const std::filesystem::path& raw_path) {
  std::string bytes = internal::ReadFileBytes(raw_path);
  const std::size_t expected = header.header_offset + header.payload_bytes();
  if (bytes.size() != expected) {
    throw Error(ErrorCode::kIntegrity,
                "'" + raw_path.string() + "' holds " +
                    std::to_string(bytes.size()) + " bytes, header implies " +
                    std::to_string(expected));
  }
  return bytes;
}

}  // namespace

std::string_view InterleaveName(Interleave interleave) {
  switch (interleave) {
    case Interleave::kBsq: return "bsq";
    case Interleave::kBil: return "bil";
    case Interleave::kBip: return "bip";
  }
  return "bsq";
}

Interleave ParseInterleave(std::string_view name) {
  const std::string lower = Lower(Trim(name));
  if (lower == "bsq") return Interleave::kBsq;
  if (lower == "bil") return Interleave::kBil;
  if (lower == "bip") return Interleave::kBip;
  throw Error(ErrorCode::kConfig,
              "unknown interleave '" + std::string(name) + "'");
}

std::size_t ElementSize(EnviDataType type) {
  switch (type) {
    case EnviDataType::kUint8: return 1;
    case EnviDataType::kInt16: return 2;
    case EnviDataType::kUint16: return 2;
    case EnviDataType::kFloat32: return 4;
  }
  return 0;
}

EnviHeader ParseEnviHeader(std::string_view text) {
  std::map<std::string, HeaderEntry> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool saw_magic = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = Trim(line);
    if (!saw_magic) {
      if (trimmed != "ENVI") {
        throw Error(ErrorCode::kParse,
                    "line " + std::to_string(line_no) +
                        ": expected 'ENVI' magic, got '" + trimmed + "'");
      }
      saw_magic = true;
      continue;
    }
    if (trimmed.empty() || trimmed[0] == ';') continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                         ": expected 'key = value', got '" +
                                         trimmed + "'");
    }
    const std::string key = NormalizeKey(trimmed.substr(0, eq));
    if (key.empty()) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": empty key");
    }
    std::string value = Trim(trimmed.substr(eq + 1));
    const std::size_t start_line = line_no;
    if (!value.empty() && value.front() == '{') {
      // Brace values may span lines.
      while (value.find('}') == std::string::npos) {
        if (!std::getline(in, line)) {
          throw Error(ErrorCode::kParse,
                      "line " + std::to_string(start_line) +
                          ": unterminated '{' for key '" + key + "'");
        }
        ++line_no;
        value += " " + Trim(line);
      }
    }
    entries[key] = HeaderEntry{value, start_line};
  }
  if (!saw_magic) throw Error(ErrorCode::kParse, "line 1: empty header");

  auto require = [&](const std::string& key) -> const HeaderEntry& {
    auto it = entries.find(key);
    if (it == entries.end()) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                         ": missing required key '" + key +
                                         "'");
    }
    return it->second;
  };

  EnviHeader header;
  header.samples = ParseCount(require("samples"), "samples");
  header.lines = ParseCount(require("lines"), "lines");
  header.bands = ParseCount(require("bands"), "bands");
  if (header.samples == 0 || header.lines == 0 || header.bands == 0) {
    throw Error(ErrorCode::kParse, "samples, lines and bands must be >= 1");
  }

  const HeaderEntry& interleave = require("interleave");
  try {
    header.interleave = ParseInterleave(interleave.value);
  } catch (const Error&) {
    throw Error(ErrorCode::kParse, "line " + std::to_string(interleave.line) +
                                       ": unknown interleave '" +
                                       interleave.value + "'");
  }

  const HeaderEntry& data_type = require("data type");
  const std::size_t type_code = ParseCount(data_type, "data type");
  switch (type_code) {
    case 1: header.data_type = EnviDataType::kUint8; break;
    case 2: header.data_type = EnviDataType::kInt16; break;
    case 4: header.data_type = EnviDataType::kFloat32; break;
    case 12: header.data_type = EnviDataType::kUint16; break;
    default:
      throw Error(ErrorCode::kUnsupportedFormat,
                  "line " + std::to_string(data_type.line) +
                      ": unsupported ENVI data type " +
                      std::to_string(type_code));
  }

  const HeaderEntry& byte_order = require("byte order");
  const std::size_t order = ParseCount(byte_order, "byte order");
  if (order > 1) {
    throw Error(ErrorCode::kParse, "line " + std::to_string(byte_order.line) +
                                       ": byte order must be 0 or 1");
  }
  header.byte_order = order == 0 ? ByteOrder::kLittle : ByteOrder::kBig;

  if (auto it = entries.find("header offset"); it != entries.end()) {
    header.header_offset = ParseCount(it->second, "header offset");
  }
  return header;
}

EnviHeader ReadEnviHeader(const std::filesystem::path& header_path) {
  const std::string text = internal::ReadFileBytes(header_path);
  try {
    return ParseEnviHeader(text);
  } catch (const Error& e) {
    throw Error(e.code(), header_path.string() + ": " +
                              std::string(e.what()));
  }
}

HsiCube ReadEnvi(const std::filesystem::path& header_path,
                 const std::filesystem::path& raw_path) {
  const EnviHeader h = ReadEnviHeader(header_path);
  const std::string bytes = LoadPayload(h, raw_path);
  const auto* payload =
      reinterpret_cast<const unsigned char*>(bytes.data()) + h.header_offset;
  const std::size_t element = ElementSize(h.data_type);

  std::vector<float> values(h.lines * h.samples * h.bands);
  std::size_t out = 0;
  for (std::size_t line = 0; line < h.lines; ++line) {
    for (std::size_t sample = 0; sample < h.samples; ++sample) {
      for (std::size_t band = 0; band < h.bands; ++band) {
        const std::size_t at = RawOffset(h, line, sample, band) * element;
        values[out++] = static_cast<float>(
            DecodeElement(payload + at, h.data_type, h.byte_order));
      }
    }
  }
  return HsiCube(h.lines, h.samples, h.bands, std::move(values));
}

void WriteEnvi(const HsiCube& cube, const std::filesystem::path& header_path,
               const std::filesystem::path& raw_path, Interleave interleave) {
  EnviHeader h;
  h.samples = cube.cols();
  h.lines = cube.rows();
  h.bands = cube.bands();
  h.interleave = interleave;
  h.data_type = EnviDataType::kFloat32;
  h.byte_order = ByteOrder::kLittle;

  std::string payload(h.payload_bytes(), '\0');
  auto* out = reinterpret_cast<unsigned char*>(payload.data());
  for (std::size_t line = 0; line < h.lines; ++line) {
    for (std::size_t sample = 0; sample < h.samples; ++sample) {
      for (std::size_t band = 0; band < h.bands; ++band) {
        const float value = cube.at(line, sample, band);
        unsigned char buf[4];
        std::memcpy(buf, &value, 4);
        if constexpr (std::endian::native == std::endian::big) {
          std::reverse(buf, buf + 4);
        }
        std::memcpy(out + RawOffset(h, line, sample, band) * 4, buf, 4);
      }
    }
  }

  std::ostringstream text;
  text << "ENVI\n"
       << "description = {hsidj float32 cube}\n"
       << "samples = " << h.samples << "\n"
       << "lines = " << h.lines << "\n"
       << "bands = " << h.bands << "\n"
       << "header offset = 0\n"
       << "file type = ENVI Standard\n"
       << "data type = 4\n"
       << "interleave = " << InterleaveName(interleave) << "\n"
       << "byte order = 0\n";
  internal::WriteFileBytes(header_path, text.str());
  internal::WriteFileBytes(raw_path, payload);
}

GroundTruth ReadGroundTruthEnvi(const std::filesystem::path& header_path,
                                const std::filesystem::path& raw_path) {
  const EnviHeader h = ReadEnviHeader(header_path);
  if (h.bands != 1) {
    throw Error(ErrorCode::kFormat, "'" + header_path.string() +
                                        "': label raster must have 1 band, has " +
                                        std::to_string(h.bands));
  }
  if (h.data_type == EnviDataType::kFloat32) {
    throw Error(ErrorCode::kFormat, "'" + header_path.string() +
                                        "': label raster must be integer-typed");
  }
  const std::string bytes = LoadPayload(h, raw_path);
  const auto* payload =
      reinterpret_cast<const unsigned char*>(bytes.data()) + h.header_offset;
  const std::size_t element = ElementSize(h.data_type);
  std::vector<Label> labels(h.lines * h.samples);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double v = DecodeElement(payload + i * element, h.data_type,
                                   h.byte_order);
    if (v < 0) {
      throw Error(ErrorCode::kFormat, "'" + raw_path.string() +
                                          "': negative label at pixel " +
                                          std::to_string(i));
    }
    labels[i] = static_cast<Label>(v);
  }
  return GroundTruth(h.lines, h.samples, std::move(labels));
}

std::filesystem::path FindEnviRaw(const std::filesystem::path& header_path) {
  std::filesystem::path stem = header_path;
  stem.replace_extension();
  for (const char* ext : {".raw", ".img", ".dat", ""}) {
    std::filesystem::path candidate = stem;
    candidate += ext;
    if (candidate != header_path && std::filesystem::exists(candidate)) {
      return candidate;
    }
  }
  throw Error(ErrorCode::kIo,
              "no raw file found next to '" + header_path.string() + "'");
}

GroundTruth ReadGroundTruth(const std::filesystem::path& path) {
  std::string bytes = internal::ReadFileBytes(path);
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') {
    try {
      return DecodePgm(bytes);
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ": " + std::string(e.what()));
    }
  }
  if (bytes.rfind("ENVI", 0) == 0) {
    return ReadGroundTruthEnvi(path, FindEnviRaw(path));
  }
  throw Error(ErrorCode::kFormat, "'" + path.string() +
                                      "' is neither a P5 PGM nor an ENVI header");
}

}  // namespace hsidj
