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

#include "adcue/train/metrics.h"

#include "adcue/error.h"

namespace adcue::train {

using store::Label;

double ClassF1(long tp, long fp, long fn) {
  const long denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

Metrics ComputeMetrics(const Confusion& c) {
  if (c.total() == 0) throw DataError("metrics: empty split");
  Metrics m;
  m.confusion = c;
  m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  // For HC the roles swap: tn are its hits, fn its false alarms.
  m.macro_f1 = 0.5 * (ClassF1(c.tp, c.fp, c.fn) + ClassF1(c.tn, c.fn, c.fp));
  return m;
}

Metrics ComputeMetrics(std::span<const Label> truth, std::span<const Label> predicted) {
  if (truth.size() != predicted.size()) throw DimensionError("metrics: size mismatch");
  Confusion c;
  for (size_t i = 0; i < truth.size(); ++i) {
    const bool ad = truth[i] == Label::kAD;
    const bool pred_ad = predicted[i] == Label::kAD;
    if (ad && pred_ad) ++c.tp;
    if (!ad && !pred_ad) ++c.tn;
    if (!ad && pred_ad) ++c.fp;
    if (ad && !pred_ad) ++c.fn;
  }
  return ComputeMetrics(c);
}

nlohmann::json MetricsToJson(const Metrics& m) {
  return {{"accuracy", m.accuracy},
          {"macro_f1", m.macro_f1},
          {"confusion",
           {{"tp", m.confusion.tp},
            {"tn", m.confusion.tn},
            {"fp", m.confusion.fp},
            {"fn", m.confusion.fn}}}};
}

Metrics MetricsFromJson(const nlohmann::json& j) {
  Metrics m;
  m.accuracy = j.at("accuracy").get<double>();
  m.macro_f1 = j.at("macro_f1").get<double>();
  const auto& c = j.at("confusion");
  m.confusion = {c.at("tp").get<long>(), c.at("tn").get<long>(), c.at("fp").get<long>(),
                 c.at("fn").get<long>()};
  return m;
}

}  // namespace adcue::train
