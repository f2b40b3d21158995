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


#ifndef ADCUE_CLI_COMMANDS_H_
#define ADCUE_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "adcue/audio/augment.h"
#include "adcue/audio/segment.h"
#include "adcue/cli/config.h"

namespace adcue::cli {

struct SegmentArgs {
  std::string input_dir;
  std::string out_dir;
  std::string labels;  // CSV: speaker_id,label,split
  audio::SegmentSpec spec;
};
// Normalizes and segments every <speaker_id>.wav of input_dir, writes
// wav/<speaker>_<k>.wav and a manifest skeleton whose embedding paths
// (audio/<speaker>_<k>.adem) the extractor fills in.
void RunSegment(const SegmentArgs& a, std::ostream& out);

struct AugmentArgs {
  std::string manifest;
  uint64_t seed = 0;
  size_t views = 1;
  audio::AugmentConfig config;
};
// Writes `views` augmented copies of every segment WAV under
// <manifest dir>/augmented/ and records them in the manifest.
void RunAugment(const AugmentArgs& a, std::ostream& out);

struct SynthArgs {
  std::string spec;
  std::string out_dir;
  std::optional<uint64_t> seed;
};
void RunSynth(const SynthArgs& a, std::ostream& out);

// Trains every seed of the config: <out_dir>/<tag>/seed<k>.adhp,
// features_seed<k>.json and report.json.
void RunTrain(const PipelineConfig& c, std::ostream& out);

struct EvalArgs {
  std::string checkpoint;
  std::string manifest;
  std::string split = "test";
  std::string keywords;  // keyword file for the correlation modality
};
void RunEval(const EvalArgs& a, std::ostream& out);

struct SweepArgs {
  std::optional<uint64_t> seed;  // default: first configured seed
  std::string csv;               // default: <out_dir>/<tag>/sweep.csv
};
void RunSweep(const PipelineConfig& c, const SweepArgs& a, std::ostream& out);

struct CombineArgs {
  std::vector<std::string> features;
  train::TrainConfig train;
  std::string report;  // default: print only
};
void RunCombine(const CombineArgs& a, std::ostream& out);

// {ws, ms} x {mean, attentive} table as CSV.
void RunAblate(const PipelineConfig& c, const std::string& csv, std::ostream& out);

}  // namespace adcue::cli

#endif  // ADCUE_CLI_COMMANDS_H_
