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


#ifndef ADCUE_TESTS_SYNTH_FIXTURE_H_
#define ADCUE_TESTS_SYNTH_FIXTURE_H_

#include "adcue/store/synth.h"
#include "adcue/train/dataset.h"
#include "test_util.h"

namespace adcue::testing {

// Small planted-signal audio spec: class shift on layer 2 of 4.
inline store::SynthSpec SmallAudioSpec(double separation, uint64_t seed = 0) {
  store::SynthSpec s;
  s.n_train_speakers = 40;
  s.n_test_speakers = 20;
  s.layers = 4;
  s.hidden = 16;
  s.informative_layer = 2;
  s.informative_dims = 6;
  s.class_separation = separation;
  s.seed = seed;
  return s;
}

// Generates `spec` into a temp dir and loads it.
struct SynthData {
  TempDir dir;
  store::Manifest manifest;
  train::Dataset data;

  explicit SynthData(const store::SynthSpec& spec, train::DatasetOptions opts = {})
      : manifest(store::GenerateSyntheticDataset(spec, dir.str())),
        data(train::Dataset::Load(manifest, opts)) {}
};

}  // namespace adcue::testing

#endif  // ADCUE_TESTS_SYNTH_FIXTURE_H_
