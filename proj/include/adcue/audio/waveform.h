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

#ifndef ADCUE_AUDIO_WAVEFORM_H_
#define ADCUE_AUDIO_WAVEFORM_H_

#include <vector>

namespace adcue::audio {

inline constexpr int kSampleRate = 16000;

struct Waveform {
  std::vector<float> samples;
  int sample_rate = kSampleRate;

  size_t size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / static_cast<double>(sample_rate);
  }
  friend bool operator==(const Waveform&, const Waveform&) = default;
};

inline constexpr double kNormalizePeak = 0.9;

// Scales the peak absolute sample to 0.9. Silent input is returned as is.
// Throws DataError on empty input.
Waveform Normalize(const Waveform& w);

double PeakAbs(const Waveform& w);

}  // namespace adcue::audio

#endif  // ADCUE_AUDIO_WAVEFORM_H_
