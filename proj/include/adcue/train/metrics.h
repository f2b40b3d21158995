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

#ifndef ADCUE_TRAIN_METRICS_H_
#define ADCUE_TRAIN_METRICS_H_

#include <span>

#include "adcue/store/manifest.h"
#include "json.hpp"

namespace adcue::train {

// AD is the positive class.
struct Confusion {
  long tp = 0;  // AD predicted AD
  long tn = 0;  // HC predicted HC
  long fp = 0;  // HC predicted AD
  long fn = 0;  // AD predicted HC

  long total() const { return tp + tn + fp + fn; }
  friend bool operator==(const Confusion&, const Confusion&) = default;
};

struct Metrics {
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  Confusion confusion;
};

// F1 of one class from its true positives, false positives and false
// negatives; 0 when undefined.
double ClassF1(long tp, long fp, long fn);

Metrics ComputeMetrics(const Confusion& c);
Metrics ComputeMetrics(std::span<const store::Label> truth,
                       std::span<const store::Label> predicted);

nlohmann::json MetricsToJson(const Metrics& m);
Metrics MetricsFromJson(const nlohmann::json& j);

}  // namespace adcue::train

#endif  // ADCUE_TRAIN_METRICS_H_
