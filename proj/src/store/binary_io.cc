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

#include "adcue/store/binary_io.h"

#include <filesystem>
#include <fstream>

#include "adcue/error.h"

namespace adcue::store {

void ByteWriter::F32(std::span<const float> values) {
  const size_t start = bytes_.size();
  bytes_.resize(start + values.size() * 4);
  char* dst = bytes_.data() + start;
  if constexpr (std::endian::native == std::endian::little) {
    std::memcpy(dst, values.data(), values.size() * 4);
  } else {
    for (float f : values) {
      const uint32_t u = std::bit_cast<uint32_t>(f);
      for (int i = 0; i < 4; ++i) *dst++ = static_cast<char>((u >> (8 * i)) & 0xff);
    }
  }
}

bool ByteReader::Raw(size_t n, std::string* out) {
  if (remaining() < n) return false;
  out->assign(bytes_.data() + pos_, n);
  pos_ += n;
  return true;
}

bool ByteReader::F32(size_t n, std::vector<float>* out) {
  if (n > remaining() / 4) return false;
  out->resize(n);
  DecodeF32(bytes_.data() + pos_, n, out->data());
  pos_ += n * 4;
  return true;
}

void DecodeF32(const char* src, size_t n, float* dst) {
  if constexpr (std::endian::native == std::endian::little) {
    std::memcpy(dst, src, n * 4);
  } else {
    for (size_t k = 0; k < n; ++k) {
      uint32_t u = 0;
      for (int i = 0; i < 4; ++i) {
        u |= static_cast<uint32_t>(static_cast<unsigned char>(src[4 * k + i])) << (8 * i);
      }
      dst[k] = std::bit_cast<float>(u);
    }
  }
}

std::vector<char> ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  in.seekg(0, std::ios::end);
  const auto size = static_cast<size_t>(in.tellg());
  in.seekg(0);
  std::vector<char> bytes(size);
  if (size > 0 && !in.read(bytes.data(), static_cast<std::streamsize>(size))) {
    throw DataError("read failure on '" + path + "'");
  }
  return bytes;
}

void WriteFileBytes(const std::string& path, std::span<const char> bytes) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failure on '" + path + "'");
}

}  // namespace adcue::store
