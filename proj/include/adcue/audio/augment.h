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


#ifndef ADCUE_AUDIO_AUGMENT_H_
#define ADCUE_AUDIO_AUGMENT_H_

#include <cstdint>
#include <string_view>

#include "adcue/audio/waveform.h"
#include "adcue/nn/rng.h"

namespace adcue::audio {

// Symmetric ranges: pitch in [-pitch_cents, pitch_cents], speed rate in
// [-speed_rate, speed_rate].
struct AugmentConfig {
  double pitch_cents = 100.0;
  double speed_rate = 0.05;
  double dither_amplitude = 1e-4;

  void Validate() const;
};

struct AugmentDraw {
  double cents = 0.0;
  double rate = 0.0;
};

// Draws cents then rate uniformly, applies PitchShift, SpeedPerturb and
// Dither in that order.
Waveform Augment(const Waveform& w, const AugmentConfig& cfg, nn::SeededRng& rng,
                 AugmentDraw* draw = nullptr);

// Stream for one (speaker, segment, view) so files can be processed in
// any order.
nn::SeededRng AugmentStream(uint64_t seed, std::string_view speaker_id, uint64_t segment,
                            uint64_t view);

}  // namespace adcue::audio

#endif  // ADCUE_AUDIO_AUGMENT_H_
