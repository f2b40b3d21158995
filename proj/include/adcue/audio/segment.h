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


#ifndef ADCUE_AUDIO_SEGMENT_H_
#define ADCUE_AUDIO_SEGMENT_H_

#include <vector>

#include "adcue/audio/waveform.h"

namespace adcue::audio {

struct SegmentSpec {
  double window_s = 30.0;
  double hop_ratio = 0.25;
  double min_tail_s = 5.0;

  void Validate() const;
  double hop_s() const { return hop_ratio * window_s; }
};

struct AudioChunk {
  double start_s = 0.0;
  double duration_s = 0.0;  // true length; samples beyond it are zero padding
  Waveform wave;            // always window_s long
};

// Full windows start at k * hop while they fit. If the audio left
// uncovered after the last full window is at least min_tail_s long, one
// more window starts at the next hop position, zero padded. Audio shorter
// than one window gives a single padded chunk.
std::vector<AudioChunk> Segment(const Waveform& w, const SegmentSpec& spec);

}  // namespace adcue::audio

#endif  // ADCUE_AUDIO_SEGMENT_H_
