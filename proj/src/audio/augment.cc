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


#include "adcue/audio/augment.h"

#include <cmath>

#include "adcue/audio/dsp.h"
#include "adcue/error.h"

namespace adcue::audio {

void AugmentConfig::Validate() const {
  if (!(pitch_cents >= 0.0 && pitch_cents <= 100.0)) {
    throw ConfigError("augment: pitch_cents must lie in [0, 100]");
  }
  if (!(speed_rate >= 0.0 && speed_rate <= 0.05)) {
    throw ConfigError("augment: speed_rate must lie in [0, 0.05]");
  }
  if (!(dither_amplitude >= 0.0) || !std::isfinite(dither_amplitude)) {
    throw ConfigError("augment: dither_amplitude must be >= 0");
  }
}

Waveform Augment(const Waveform& w, const AugmentConfig& cfg, nn::SeededRng& rng,
                 AugmentDraw* draw) {
  cfg.Validate();
  AugmentDraw d;
  d.cents = rng.Uniform(-cfg.pitch_cents, cfg.pitch_cents);
  d.rate = rng.Uniform(-cfg.speed_rate, cfg.speed_rate);
  if (draw) *draw = d;
  return Dither(SpeedPerturb(PitchShift(w, d.cents), d.rate), cfg.dither_amplitude, rng);
}

nn::SeededRng AugmentStream(uint64_t seed, std::string_view speaker_id, uint64_t segment,
                            uint64_t view) {
  return nn::SeededRng(
      nn::SeededRng::Mix({seed, nn::SeededRng::Hash(speaker_id), segment, view}));
}

}  // namespace adcue::audio
