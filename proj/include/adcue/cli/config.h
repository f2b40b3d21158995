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


#ifndef ADCUE_CLI_CONFIG_H_
#define ADCUE_CLI_CONFIG_H_

#include <optional>
#include <string>

#include "adcue/audio/augment.h"
#include "adcue/audio/segment.h"
#include "adcue/head/head.h"
#include "adcue/keywords/keywords.h"
#include "adcue/store/synth.h"
#include "adcue/train/dataset.h"
#include "adcue/train/trainer.h"
#include "json.hpp"

namespace adcue::cli {

struct KeywordSettings {
  keywords::Category category = keywords::Category::kNouns;
  size_t layer = 0;
  std::string file;  // empty: built-in picture-description list
};

// Everything one experiment needs, read from a YAML file with flat
// sections per module:
//
//   manifest: data/manifest.json
//   out_dir: runs
//   modality: audio
//   tag: audio
//   segment:  {window_s, hop_ratio, min_tail_s}
//   augment:  {pitch_cents, speed_rate, dither_amplitude}
//   head:     {aggregation, ms_layer, proj_dims, attn_dim, pooling}
//   train:    {lr, weight_decay, batch_speakers, epochs, dropout, seeds,
//              augmentation, folds}
//   keywords: {category, layer, file}
//
// Every key is optional; unknown keys are errors. Relative paths are
// resolved against the config file's directory.
struct PipelineConfig {
  std::string manifest;
  std::string out_dir = "runs";
  train::Modality modality = train::Modality::kAudio;
  std::string tag;  // empty: modality name
  audio::SegmentSpec segment;
  audio::AugmentConfig augment;
  head::HeadConfig head;
  train::TrainConfig train;
  KeywordSettings keywords;

  void Validate() const;
  std::string EffectiveTag() const;
};

PipelineConfig ParsePipelineConfig(const std::string& yaml_text, const std::string& base_dir);
PipelineConfig LoadPipelineConfig(const std::string& path);
nlohmann::json PipelineConfigToJson(const PipelineConfig& c);

// Synthetic-data spec: SynthSpec fields at top level plus an optional
// `text` map with TextSynthSpec fields.
store::SynthSpec ParseSynthSpec(const std::string& yaml_text);
store::SynthSpec LoadSynthSpec(const std::string& path);

// Dataset options implied by a config (modality, keywords, single-layer
// loading for single-layer aggregation).
train::DatasetOptions MakeDatasetOptions(const PipelineConfig& c);
keywords::KeywordInventory LoadInventory(const std::string& keyword_file);

}  // namespace adcue::cli

#endif  // ADCUE_CLI_CONFIG_H_
