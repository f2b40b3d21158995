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


#include "adcue/audio/wav_io.h"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "adcue/audio/dsp.h"
#include "adcue/error.h"
#include "adcue/store/binary_io.h"

namespace adcue::audio {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint32_t ReadU32(store::ByteReader& r, const std::string& origin) {
  uint32_t v = 0;
  if (!r.U32(&v)) throw DataError(origin + ": truncated WAV header");
  return v;
}

uint16_t ReadU16(store::ByteReader& r, const std::string& origin) {
  uint16_t v = 0;
  if (!r.U16(&v)) throw DataError(origin + ": truncated WAV header");
  return v;
}

std::string ReadTag(store::ByteReader& r, const std::string& origin) {
  std::string tag;
  if (!r.Raw(4, &tag)) throw DataError(origin + ": truncated WAV header");
  return tag;
}

}  // namespace

Waveform DecodeWav(std::span<const char> bytes, const std::string& origin) {
  store::ByteReader r(bytes);
  if (ReadTag(r, origin) != "RIFF") throw DataError(origin + ": not a RIFF file");
  ReadU32(r, origin);
  if (ReadTag(r, origin) != "WAVE") throw DataError(origin + ": not a WAVE file");

  bool have_fmt = false;
  uint16_t channels = 0, bits = 0;
  uint32_t rate = 0;
  while (r.remaining() >= 8) {
    const std::string tag = ReadTag(r, origin);
    const uint32_t size = ReadU32(r, origin);
    if (size > r.remaining()) throw DataError(origin + ": chunk '" + tag + "' is truncated");
    if (tag == "fmt ") {
      if (size < 16) throw DataError(origin + ": malformed fmt chunk");
      const uint16_t format = ReadU16(r, origin);
      channels = ReadU16(r, origin);
      rate = ReadU32(r, origin);
      ReadU32(r, origin);  // byte rate
      ReadU16(r, origin);  // block align
      bits = ReadU16(r, origin);
      r.Skip(size - 16);
      if (format != kFormatPcm && format != kFormatExtensible) {
        throw DataError(origin + ": unsupported WAV encoding " + std::to_string(format) +
                        " (PCM16 required)");
      }
      if (channels != 1) {
        throw DataError(origin + ": mono required (file has " + std::to_string(channels) +
                        " channels)");
      }
      if (bits != 16) {
        throw DataError(origin + ": unsupported bit depth " + std::to_string(bits) +
                        " (PCM16 required)");
      }
      if (rate == 0) throw DataError(origin + ": sample rate is 0");
      have_fmt = true;
    } else if (tag == "data") {
      if (!have_fmt) throw DataError(origin + ": data chunk before fmt chunk");
      Waveform w;
      w.sample_rate = static_cast<int>(rate);
      w.samples.resize(size / 2);
      for (float& s : w.samples) {
        s = static_cast<float>(static_cast<int16_t>(ReadU16(r, origin))) / 32768.0f;
      }
      if (w.sample_rate == kSampleRate) return w;
      Waveform out = ResampleAnyFactor(w, static_cast<double>(rate) / kSampleRate);
      out.sample_rate = kSampleRate;
      return out;
    } else {
      r.Skip(size);
    }
    // Chunks are padded to even sizes.
    if (size % 2 == 1) r.Skip(1);
  }
  throw DataError(origin + ": no data chunk");
}

Waveform ReadWav(const std::string& path) {
  const auto bytes = store::ReadFileBytes(path);
  return DecodeWav(bytes, path);
}

std::vector<char> EncodeWav(const Waveform& w) {
  if (w.sample_rate != kSampleRate) {
    throw ConfigError("write_wav: expected 16000 Hz, got " + std::to_string(w.sample_rate));
  }
  const auto data_bytes = static_cast<uint32_t>(w.samples.size() * 2);
  store::ByteWriter out;
  out.Raw("RIFF");
  out.U32(36 + data_bytes);
  out.Raw("WAVE");
  out.Raw("fmt ");
  out.U32(16);
  out.U16(kFormatPcm);
  out.U16(1);
  out.U32(kSampleRate);
  out.U32(kSampleRate * 2);
  out.U16(2);
  out.U16(16);
  out.Raw("data");
  out.U32(data_bytes);
  for (float s : w.samples) {
    const double v = std::clamp(static_cast<double>(s), -1.0, 1.0) * 32768.0;
    const auto q = static_cast<int16_t>(std::clamp<long>(std::lround(v), -32768, 32767));
    out.U16(static_cast<uint16_t>(q));
  }
  return out.bytes();
}

void WriteWav(const Waveform& w, const std::string& path) {
  store::WriteFileBytes(path, EncodeWav(w));
}

}  // namespace adcue::audio
