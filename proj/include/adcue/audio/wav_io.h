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


#ifndef ADCUE_AUDIO_WAV_IO_H_
#define ADCUE_AUDIO_WAV_IO_H_

#include <span>
#include <string>
#include <vector>

#include "adcue/audio/waveform.h"

namespace adcue::audio {

// Decodes a RIFF/WAVE file holding mono 16-bit PCM. Any other sample rate
// is resampled to 16 kHz. Unknown chunks are skipped. Throws DataError
// ("mono required" for multi-channel input).
Waveform DecodeWav(std::span<const char> bytes, const std::string& origin);
Waveform ReadWav(const std::string& path);

// 16 kHz mono PCM16; samples are clipped to [-1, 1] and rounded to the
// nearest step of 2^-15. Throws ConfigError for any other sample rate.
std::vector<char> EncodeWav(const Waveform& w);
void WriteWav(const Waveform& w, const std::string& path);

}  // namespace adcue::audio

#endif  // ADCUE_AUDIO_WAV_IO_H_
