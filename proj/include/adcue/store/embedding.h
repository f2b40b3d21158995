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

#ifndef ADCUE_STORE_EMBEDDING_H_
#define ADCUE_STORE_EMBEDDING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "adcue/error.h"

namespace adcue::store {

// Layer-stacked encoder output for one segment, stored [layer][frame][hidden].
// Frames are time steps for audio (50 per second) or tokens for text.
class EmbeddingTensor {
 public:
  EmbeddingTensor() = default;
  EmbeddingTensor(size_t layers, size_t frames, size_t hidden, float fill = 0.0f)
      : layers_(layers), frames_(frames), hidden_(hidden),
        data_(layers * frames * hidden, fill) {}

  size_t layers() const { return layers_; }
  size_t frames() const { return frames_; }
  size_t hidden() const { return hidden_; }

  float& at(size_t l, size_t t, size_t h) {
    return data_[(l * frames_ + t) * hidden_ + h];
  }
  float at(size_t l, size_t t, size_t h) const {
    return data_[(l * frames_ + t) * hidden_ + h];
  }

  // Contiguous frames x hidden slab of one layer.
  std::span<const float> layer(size_t l) const {
    return {data_.data() + l * frames_ * hidden_, frames_ * hidden_};
  }
  std::span<const float> frame(size_t l, size_t t) const {
    return {data_.data() + (l * frames_ + t) * hidden_, hidden_};
  }
  std::span<float> values() { return data_; }
  std::span<const float> values() const { return data_; }

  // Throws EmbeddingFormatError(kInvalidTensor) on zero dims or non-finite data.
  void Validate() const;

  friend bool operator==(const EmbeddingTensor&, const EmbeddingTensor&) = default;

 private:
  size_t layers_ = 0;
  size_t frames_ = 0;
  size_t hidden_ = 0;
  std::vector<float> data_;
};

class EmbeddingFormatError : public DataError {
 public:
  enum class Code {
    kInvalidTensor,
    kBadMagic,
    kVersionMismatch,
    kUnsupportedLayout,
    kTruncatedPayload,
    kTrailingBytes,
    kNonFinite,
  };
  EmbeddingFormatError(Code code, const std::string& what)
      : DataError(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

// On-disk layout, little-endian, no padding:
//   "ADEM" | u16 version=1 | u8 dtype=1 (f32) | u8 rank=3 | u64 L, T, H |
//   L*T*H float32
inline constexpr char kEmbeddingMagic[4] = {'A', 'D', 'E', 'M'};
inline constexpr uint16_t kEmbeddingVersion = 1;
inline constexpr size_t kEmbeddingHeaderBytes = 4 + 2 + 1 + 1 + 3 * 8;

std::vector<char> EncodeEmbedding(const EmbeddingTensor& t);
EmbeddingTensor DecodeEmbedding(std::span<const char> bytes,
                                const std::string& origin = "<memory>");

void WriteEmbedding(const EmbeddingTensor& t, const std::string& path);
EmbeddingTensor ReadEmbedding(const std::string& path);

struct EmbeddingShape {
  size_t layers = 0;
  size_t frames = 0;
  size_t hidden = 0;
};

// Reads and checks only the header (including the expected file size).
EmbeddingShape ReadEmbeddingShape(const std::string& path);

// Reads a single layer slab as a 1 x T x H tensor without loading the rest.
EmbeddingTensor ReadEmbeddingLayer(const std::string& path, size_t layer);

}  // namespace adcue::store

#endif  // ADCUE_STORE_EMBEDDING_H_
