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


#include "adcue/audio/waveform.h"

#include <cmath>

#include "adcue/error.h"

namespace adcue::audio {

double PeakAbs(const Waveform& w) {
  double peak = 0.0;
  for (float s : w.samples) peak = std::max(peak, std::abs(static_cast<double>(s)));
  return peak;
}

Waveform Normalize(const Waveform& w) {
  if (w.samples.empty()) throw DataError("normalize: empty waveform");
  const double peak = PeakAbs(w);
  if (peak == 0.0) return w;
  const double gain = kNormalizePeak / peak;
  Waveform out = w;
  for (float& s : out.samples) s = static_cast<float>(static_cast<double>(s) * gain);
  return out;
}

}  // namespace adcue::audio
