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

#ifndef ADCUE_STORE_SYNTH_H_
#define ADCUE_STORE_SYNTH_H_

#include <cstdint>
#include <optional>
#include <string>

#include "adcue/store/manifest.h"

namespace adcue::store {

// Planted-signal text modality plus keyword tensors.
//
// Text tokens carry a class shift on dims [0, informative_dims) of
// informative_layer, and a second class shift on the "noun keyword" block
// [informative_dims, informative_dims + keyword_dims) of keyword_layer.
// Noun keyword tensors have keyword_magnitude on that block, verb keyword
// tensors on the following block, and small noise elsewhere, so the
// element-wise utterance/keyword product isolates the noun block.
struct TextSynthSpec {
  int layers = 4;
  int hidden = 32;
  int min_segments = 1;
  int max_segments = 2;
  int min_tokens = 6;
  int max_tokens = 12;
  int informative_layer = 2;
  int informative_dims = 8;
  double class_separation = 2.0;
  int keyword_layer = 2;
  int keyword_dims = 8;
  double keyword_separation = 2.0;
  double keyword_magnitude = 1.0;
  double keyword_noise = 0.05;
  int keyword_tokens = 1;
  double noise_sigma = 1.0;
  double speaker_sigma = 0.0;
};

struct SynthSpec {
  int n_train_speakers = 100;
  int n_test_speakers = 40;
  int layers = 6;
  int hidden = 32;
  int min_segments = 2;
  int max_segments = 4;
  int min_frames = 8;
  int max_frames = 16;
  int informative_layer = 3;
  int informative_dims = 8;
  double class_separation = 2.0;  // delta, in units of noise_sigma
  double noise_sigma = 1.0;
  // Per-speaker persistent offset on informative dims (0 disables).
  double speaker_sigma = 0.0;
  // Fraction of frames carrying the class shift. Below 1 the carrying
  // frames are also marked by +salience * sigma on the last hidden dim.
  double informative_frame_fraction = 1.0;
  double salience = 0.0;
  uint64_t seed = 0;
  std::optional<TextSynthSpec> text;

  void Validate() const;
};

// Writes <out_dir>/manifest.json plus audio/, text/ and keywords/ tensor
// files. Labels alternate AD/HC so both splits are exactly balanced when
// their speaker counts are even. Output is a pure function of the spec.
Manifest GenerateSyntheticDataset(const SynthSpec& spec, const std::string& out_dir);

}  // namespace adcue::store

#endif  // ADCUE_STORE_SYNTH_H_
