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

#ifndef ADCUE_STORE_BINARY_IO_H_
#define ADCUE_STORE_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace adcue::store {

// Little-endian encoding into a byte buffer, independent of host order.
class ByteWriter {
 public:
  void U8(uint8_t v) { bytes_.push_back(v); }
  void U16(uint16_t v) { Unsigned(v, 2); }
  void U32(uint32_t v) { Unsigned(v, 4); }
  void U64(uint64_t v) { Unsigned(v, 8); }
  void Raw(std::string_view s) { bytes_.insert(bytes_.end(), s.begin(), s.end()); }
  void F32(std::span<const float> values);

  const std::vector<char>& bytes() const { return bytes_; }

 private:
  void Unsigned(uint64_t v, int n) {
    for (int i = 0; i < n; ++i) bytes_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  std::vector<char> bytes_;
};

// Cursor over an in-memory byte range. Reads past the end return false.
class ByteReader {
 public:
  explicit ByteReader(std::span<const char> bytes) : bytes_(bytes) {}

  bool U8(uint8_t* v) { return Unsigned(v, 1); }
  bool U16(uint16_t* v) { return Unsigned(v, 2); }
  bool U32(uint32_t* v) { return Unsigned(v, 4); }
  bool U64(uint64_t* v) { return Unsigned(v, 8); }
  bool Raw(size_t n, std::string* out);
  bool Skip(size_t n) {
    if (remaining() < n) return false;
    pos_ += n;
    return true;
  }
  bool F32(size_t n, std::vector<float>* out);

  size_t remaining() const { return bytes_.size() - pos_; }
  size_t position() const { return pos_; }

 private:
  template <typename T>
  bool Unsigned(T* v, int n) {
    if (remaining() < static_cast<size_t>(n)) return false;
    uint64_t acc = 0;
    for (int i = 0; i < n; ++i) {
      acc |= static_cast<uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += n;
    *v = static_cast<T>(acc);
    return true;
  }
  std::span<const char> bytes_;
  size_t pos_ = 0;
};

// Decodes `n` little-endian float32 values from `src`.
void DecodeF32(const char* src, size_t n, float* dst);

// Whole-file helpers; throw DataError on I/O failure.
std::vector<char> ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path, std::span<const char> bytes);

}  // namespace adcue::store

#endif  // ADCUE_STORE_BINARY_IO_H_
