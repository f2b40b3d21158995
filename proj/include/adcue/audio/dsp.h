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

#ifndef ADCUE_AUDIO_DSP_H_
#define ADCUE_AUDIO_DSP_H_

#include "adcue/audio/waveform.h"
#include "adcue/nn/rng.h"

namespace adcue::audio {

// Windowed-sinc resampler parameters.
inline constexpr int kSincZeroCrossings = 32;  // taps per side
inline constexpr double kKaiserBeta = 8.6;

// Reads the input at positions n * factor: output length is
// round(n / factor), and a tone at f Hz comes out at f * factor Hz at the
// same sample rate. factor must lie in [0.5, 2]; 1 is an exact copy.
Waveform Resample(const Waveform& w, double factor);

// As Resample without the range check, for sample-rate conversion.
Waveform ResampleAnyFactor(const Waveform& w, double factor);

// Resample by (1 + rate); rate in [-0.05, 0.05].
Waveform SpeedPerturb(const Waveform& w, double rate);

// WSOLA parameters.
inline constexpr double kWsolaFrameS = 0.040;
inline constexpr double kWsolaToleranceS = 0.005;

// Duration times `ratio` with pitch kept, by waveform-similarity
// overlap-add (40 ms Hann frames, 50% overlap, +-5 ms search). Output
// length is round(n * ratio); ratio in [0.9, 1.12].
Waveform TimeStretch(const Waveform& w, double ratio);

// Shifts pitch by `cents` (in [-100, 100]) keeping the duration:
// Resample by 2^(cents/1200), then TimeStretch by the same factor.
Waveform PitchShift(const Waveform& w, double cents);

// Adds triangular noise with peak `amplitude`, then clips to [-1, 1].
Waveform Dither(const Waveform& w, double amplitude, nn::SeededRng& rng);

}  // namespace adcue::audio

#endif  // ADCUE_AUDIO_DSP_H_
