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


#include "adcue/audio/segment.h"

#include <algorithm>
#include <cmath>

#include "adcue/error.h"

namespace adcue::audio {

void SegmentSpec::Validate() const {
  if (!(window_s > 0.0) || !std::isfinite(window_s)) throw ConfigError("segment: window_s must be > 0");
  if (!(hop_ratio > 0.0 && hop_ratio <= 1.0)) throw ConfigError("segment: hop_ratio must lie in (0, 1]");
  if (!(min_tail_s >= 0.0) || !std::isfinite(min_tail_s)) {
    throw ConfigError("segment: min_tail_s must be >= 0");
  }
}

std::vector<AudioChunk> Segment(const Waveform& w, const SegmentSpec& spec) {
  spec.Validate();
  const double rate = w.sample_rate;
  const auto n = static_cast<long>(w.size());
  const auto window = static_cast<long>(std::llround(spec.window_s * rate));
  const auto hop = std::max(1L, static_cast<long>(std::llround(spec.hop_s() * rate)));
  const auto min_tail = static_cast<long>(std::llround(spec.min_tail_s * rate));

  auto chunk = [&](long start) {
    AudioChunk c;
    c.start_s = static_cast<double>(start) / rate;
    const long len = std::clamp(n - start, 0L, window);
    c.duration_s = static_cast<double>(len) / rate;
    c.wave.sample_rate = w.sample_rate;
    c.wave.samples.assign(static_cast<size_t>(window), 0.0f);
    std::copy_n(w.samples.begin() + start, len, c.wave.samples.begin());
    return c;
  };

  std::vector<AudioChunk> out;
  if (n < window) {
    out.push_back(chunk(0));
    return out;
  }
  long start = 0;
  for (; start + window <= n; start += hop) out.push_back(chunk(start));
  const long last_end = start - hop + window;
  if (n - last_end >= min_tail && n > last_end) out.push_back(chunk(start));
  return out;
}

}  // namespace adcue::audio
