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

#ifndef ADCUE_TRAIN_FUSION_H_
#define ADCUE_TRAIN_FUSION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "adcue/head/head.h"
#include "adcue/nn/matrix.h"
#include "adcue/train/dataset.h"
#include "adcue/train/trainer.h"
#include "json.hpp"

namespace adcue::train {

struct FeatureRow {
  std::string speaker_id;
  store::Label label = store::Label::kHC;
  store::Split split = store::Split::kTrain;
  std::vector<double> vector;
};

// Speaker-level features of one modality (or a fused set, whose modality
// reads e.g. "audio+text").
struct FeatureTable {
  std::string modality;
  size_t dim = 0;
  std::vector<FeatureRow> rows;
};

// Eval-mode speaker features for every speaker of `data`.
FeatureTable ExportFeatures(const Dataset& data, const head::HeadConfig& cfg,
                            const head::HeadParams& params);

nlohmann::json FeatureTableToJson(const FeatureTable& t);
FeatureTable FeatureTableFromJson(const nlohmann::json& j);
void SaveFeatureTable(const FeatureTable& t, const std::string& path);
FeatureTable LoadFeatureTable(const std::string& path);

// Concatenates per-speaker features in the fixed order audio, text, corr,
// whatever order the tables come in. Every speaker must appear in every
// table with the same label and split. Rows follow the first table in that
// order.
FeatureTable CombineFeatures(std::vector<FeatureTable> tables);

// Linear classifier over fixed features.
struct LinearModel {
  nn::Param weight{"cls.w", 0, 1};
  nn::Param bias{"cls.b", 1, 1};

  double Logit(std::span<const double> x) const;
};

// Same recipe as Train (speaker shuffling per epoch, batch-mean BCE,
// AdamW) on the train rows of `table`. Dropout does not apply.
LinearModel TrainLinear(const FeatureTable& table, const TrainConfig& tc, uint64_t seed);
Metrics EvaluateLinear(const FeatureTable& table, const LinearModel& model, store::Split split);

// Per-seed train/test runs of the linear classifier.
RunReport FusionMultiRun(const FeatureTable& table, const TrainConfig& tc);

}  // namespace adcue::train

#endif  // ADCUE_TRAIN_FUSION_H_
