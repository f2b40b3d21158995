// Copyright 2026 The adcue Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adcue/store/embedding.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "adcue/store/binary_io.h"

namespace adcue::store {
namespace {

using Code = EmbeddingFormatError::Code;

constexpr uint8_t kDtypeF32 = 1;
constexpr uint8_t kRank = 3;

bool AllFinite(std::span<const float> v) {
  return std::all_of(v.begin(), v.end(), [](float x) { return std::isfinite(x); });
}

EmbeddingShape ParseHeader(ByteReader& r, const std::string& origin) {
  std::string magic;
  if (!r.Raw(4, &magic)) {
    throw EmbeddingFormatError(Code::kTruncatedPayload, origin + ": truncated header");
  }
  if (magic != std::string_view(kEmbeddingMagic, 4)) {
    throw EmbeddingFormatError(Code::kBadMagic, origin + ": bad magic");
  }
  uint16_t version = 0;
  uint8_t dtype = 0, rank = 0;
  EmbeddingShape s;
  uint64_t dims[3] = {0, 0, 0};
  if (!r.U16(&version) || !r.U8(&dtype) || !r.U8(&rank) || !r.U64(&dims[0]) ||
      !r.U64(&dims[1]) || !r.U64(&dims[2])) {
    throw EmbeddingFormatError(Code::kTruncatedPayload, origin + ": truncated header");
  }
  if (version != kEmbeddingVersion) {
    throw EmbeddingFormatError(Code::kVersionMismatch,
                               origin + ": version mismatch (file has " +
                                   std::to_string(version) + ", expected 1)");
  }
  if (dtype != kDtypeF32 || rank != kRank) {
    throw EmbeddingFormatError(Code::kUnsupportedLayout,
                               origin + ": unsupported dtype/rank");
  }
  if (dims[0] == 0 || dims[1] == 0 || dims[2] == 0) {
    throw EmbeddingFormatError(Code::kUnsupportedLayout, origin + ": zero dimension");
  }
  s.layers = dims[0];
  s.frames = dims[1];
  s.hidden = dims[2];
  return s;
}

uint64_t PayloadBytes(const EmbeddingShape& s, const std::string& origin) {
  const uint64_t limit = UINT64_MAX / 4;
  if (s.layers > limit / s.frames || s.layers * s.frames > limit / s.hidden) {
    throw EmbeddingFormatError(Code::kUnsupportedLayout, origin + ": dims overflow");
  }
  return s.layers * s.frames * s.hidden * 4;
}

}  // namespace

void EmbeddingTensor::Validate() const {
  if (layers_ == 0 || frames_ == 0 || hidden_ == 0) {
    throw EmbeddingFormatError(Code::kInvalidTensor, "embedding tensor has a zero dimension");
  }
  if (data_.size() != layers_ * frames_ * hidden_) {
    throw EmbeddingFormatError(Code::kInvalidTensor, "embedding tensor size mismatch");
  }
  if (!AllFinite(data_)) {
    throw EmbeddingFormatError(Code::kInvalidTensor,
                               "embedding tensor holds non-finite values");
  }
}

std::vector<char> EncodeEmbedding(const EmbeddingTensor& t) {
  t.Validate();
  ByteWriter w;
  w.Raw(std::string_view(kEmbeddingMagic, 4));
  w.U16(kEmbeddingVersion);
  w.U8(kDtypeF32);
  w.U8(kRank);
  w.U64(t.layers());
  w.U64(t.frames());
  w.U64(t.hidden());
  w.F32(t.values());
  return w.bytes();
}

EmbeddingTensor DecodeEmbedding(std::span<const char> bytes, const std::string& origin) {
  ByteReader r(bytes);
  const EmbeddingShape s = ParseHeader(r, origin);
  const uint64_t payload = PayloadBytes(s, origin);
  if (r.remaining() < payload) {
    throw EmbeddingFormatError(Code::kTruncatedPayload, origin + ": truncated payload");
  }
  if (r.remaining() > payload) {
    throw EmbeddingFormatError(Code::kTrailingBytes, origin + ": trailing bytes");
  }
  EmbeddingTensor t(s.layers, s.frames, s.hidden);
  DecodeF32(bytes.data() + r.position(), t.values().size(), t.values().data());
  if (!AllFinite(t.values())) {
    throw EmbeddingFormatError(Code::kNonFinite, origin + ": non-finite values");
  }
  return t;
}

void WriteEmbedding(const EmbeddingTensor& t, const std::string& path) {
  WriteFileBytes(path, EncodeEmbedding(t));
}

EmbeddingTensor ReadEmbedding(const std::string& path) {
  return DecodeEmbedding(ReadFileBytes(path), path);
}

namespace {

std::ifstream OpenChecked(const std::string& path, EmbeddingShape* shape) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  char header[kEmbeddingHeaderBytes];
  in.read(header, sizeof(header));
  ByteReader r(std::span<const char>(header, static_cast<size_t>(in.gcount())));
  *shape = ParseHeader(r, path);
  in.clear();
  in.seekg(0, std::ios::end);
  const auto size = static_cast<uint64_t>(in.tellg());
  const uint64_t expected = kEmbeddingHeaderBytes + PayloadBytes(*shape, path);
  if (size < expected) {
    throw EmbeddingFormatError(Code::kTruncatedPayload, path + ": truncated payload");
  }
  if (size > expected) {
    throw EmbeddingFormatError(Code::kTrailingBytes, path + ": trailing bytes");
  }
  return in;
}

}  // namespace

EmbeddingShape ReadEmbeddingShape(const std::string& path) {
  EmbeddingShape s;
  OpenChecked(path, &s);
  return s;
}

EmbeddingTensor ReadEmbeddingLayer(const std::string& path, size_t layer) {
  EmbeddingShape s;
  std::ifstream in = OpenChecked(path, &s);
  if (layer >= s.layers) {
    throw ConfigError(path + ": layer " + std::to_string(layer) + " out of range (L=" +
                      std::to_string(s.layers) + ")");
  }
  const size_t slab = s.frames * s.hidden;
  std::vector<char> raw(slab * 4);
  in.seekg(static_cast<std::streamoff>(kEmbeddingHeaderBytes + layer * slab * 4));
  if (!in.read(raw.data(), static_cast<std::streamsize>(raw.size()))) {
    throw EmbeddingFormatError(Code::kTruncatedPayload, path + ": truncated payload");
  }
  EmbeddingTensor t(1, s.frames, s.hidden);
  DecodeF32(raw.data(), slab, t.values().data());
  if (!AllFinite(t.values())) {
    throw EmbeddingFormatError(Code::kNonFinite, path + ": non-finite values");
  }
  return t;
}

}  // namespace adcue::store
