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

#include "adcue/train/ablation.h"

#include "adcue/error.h"
#include "fmt/format.h"

namespace adcue::train {

std::vector<AblationCell> PoolingAblation(const Dataset& data, const head::HeadConfig& base,
                                          const TrainConfig& tc) {
  if (data.layer_preselected()) throw ConfigError("pooling ablation needs all layers loaded");
  std::vector<AblationCell> cells;
  for (auto agg : {head::Aggregation::kWeightedSum, head::Aggregation::kMaxSingle}) {
    for (auto pool : {head::Pooling::kMean, head::Pooling::kAttentive}) {
      head::HeadConfig cfg = base;
      cfg.aggregation = agg;
      cfg.pooling = pool;
      const std::string tag = fmt::format("{}/{}", head::AggregationName(agg),
                                          head::PoolingName(pool));
      cells.push_back({agg, pool, MultiRun(data, cfg, tc, tag)});
    }
  }
  return cells;
}

std::string AblationCsv(const std::vector<AblationCell>& cells) {
  std::string out = "aggregation,pooling,mean_accuracy,std_accuracy,mean_macro_f1,std_macro_f1\n";
  for (const auto& c : cells) {
    out += fmt::format("{},{},{:.6f},{:.6f},{:.6f},{:.6f}\n", head::AggregationName(c.aggregation),
                       head::PoolingName(c.pooling), c.report.mean_accuracy,
                       c.report.std_accuracy, c.report.mean_macro_f1, c.report.std_macro_f1);
  }
  return out;
}

}  // namespace adcue::train
