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

#ifndef ADCUE_TRAIN_ABLATION_H_
#define ADCUE_TRAIN_ABLATION_H_

#include <string>
#include <vector>

#include "adcue/head/head.h"
#include "adcue/train/dataset.h"
#include "adcue/train/trainer.h"

namespace adcue::train {

struct AblationCell {
  head::Aggregation aggregation;
  head::Pooling pooling;
  RunReport report;
};

// MultiRun for every cell of {ws, ms} x {mean, attentive}, in that order.
// `base.ms_layer` is the layer used by the ms cells.
std::vector<AblationCell> PoolingAblation(const Dataset& data, const head::HeadConfig& base,
                                          const TrainConfig& tc);

// CSV: aggregation,pooling,mean_accuracy,std_accuracy,mean_macro_f1,std_macro_f1
std::string AblationCsv(const std::vector<AblationCell>& cells);

}  // namespace adcue::train

#endif  // ADCUE_TRAIN_ABLATION_H_
