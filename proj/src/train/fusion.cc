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

#include "adcue/train/fusion.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "adcue/error.h"
#include "adcue/nn/adamw.h"
#include "adcue/nn/ops.h"
#include "adcue/store/binary_io.h"
#include "spdlog/spdlog.h"

namespace adcue::train {

using nlohmann::json;

FeatureTable ExportFeatures(const Dataset& data, const head::HeadConfig& cfg,
                            const head::HeadParams& params) {
  FeatureTable t;
  t.modality = std::string(ModalityName(data.modality()));
  t.dim = cfg.feature_dim();
  for (const SpeakerData* s : data.speakers()) {
    const auto inputs = data.Inputs(*s);
    t.rows.push_back({s->speaker_id, s->label, s->split,
                      head::SpeakerFeatureVector(inputs, cfg, params)});
  }
  return t;
}

json FeatureTableToJson(const FeatureTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"speaker_id", r.speaker_id},
                    {"label", store::LabelName(r.label)},
                    {"split", store::SplitName(r.split)},
                    {"vector", r.vector}});
  }
  return {{"modality", t.modality}, {"dim", t.dim}, {"speakers", rows}};
}

FeatureTable FeatureTableFromJson(const json& j) {
  FeatureTable t;
  try {
    t.modality = j.at("modality").get<std::string>();
    t.dim = j.at("dim").get<size_t>();
    for (const auto& r : j.at("speakers")) {
      FeatureRow row;
      row.speaker_id = r.at("speaker_id").get<std::string>();
      const auto label = store::ParseLabel(r.at("label").get<std::string>());
      const auto split = store::ParseSplit(r.at("split").get<std::string>());
      if (!label || !split) throw DataError("bad label or split for '" + row.speaker_id + "'");
      row.label = *label;
      row.split = *split;
      row.vector = r.at("vector").get<std::vector<double>>();
      if (row.vector.size() != t.dim) {
        throw DataError("feature of '" + row.speaker_id + "' has " +
                        std::to_string(row.vector.size()) + " values, expected " +
                        std::to_string(t.dim));
      }
      t.rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("feature table: ") + e.what());
  }
  return t;
}

void SaveFeatureTable(const FeatureTable& t, const std::string& path) {
  const std::string text = FeatureTableToJson(t).dump(2) + "\n";
  store::WriteFileBytes(path, std::span<const char>(text.data(), text.size()));
}

FeatureTable LoadFeatureTable(const std::string& path) {
  const auto bytes = store::ReadFileBytes(path);
  json j = json::parse(bytes.begin(), bytes.end(), nullptr, false);
  if (j.is_discarded()) throw DataError(path + ": not valid JSON");
  return FeatureTableFromJson(j);
}

FeatureTable CombineFeatures(std::vector<FeatureTable> tables) {
  if (tables.empty()) throw ConfigError("combine: no feature tables");
  std::stable_sort(tables.begin(), tables.end(), [](const auto& a, const auto& b) {
    return ModalityRank(a.modality) < ModalityRank(b.modality);
  });
  for (size_t i = 1; i < tables.size(); ++i) {
    if (tables[i].modality == tables[i - 1].modality) {
      throw ConfigError("combine: modality '" + tables[i].modality + "' given twice");
    }
  }
  std::vector<std::map<std::string, const FeatureRow*>> index(tables.size());
  for (size_t i = 0; i < tables.size(); ++i) {
    for (const auto& r : tables[i].rows) {
      if (!index[i].emplace(r.speaker_id, &r).second) {
        throw DataError("combine: duplicate speaker '" + r.speaker_id + "' in " +
                        tables[i].modality);
      }
    }
  }

  FeatureTable out;
  for (const auto& t : tables) {
    out.modality += (out.modality.empty() ? "" : "+") + t.modality;
    out.dim += t.dim;
  }
  for (const auto& first : tables.front().rows) {
    FeatureRow row = first;
    for (size_t i = 1; i < tables.size(); ++i) {
      auto it = index[i].find(first.speaker_id);
      if (it == index[i].end()) {
        throw DataError("combine: speaker '" + first.speaker_id + "' missing modality '" +
                        tables[i].modality + "'");
      }
      const FeatureRow& other = *it->second;
      if (other.label != first.label || other.split != first.split) {
        throw DataError("combine: speaker '" + first.speaker_id +
                        "' has inconsistent label or split");
      }
      row.vector.insert(row.vector.end(), other.vector.begin(), other.vector.end());
    }
    out.rows.push_back(std::move(row));
  }
  for (size_t i = 1; i < tables.size(); ++i) {
    if (index[i].size() != out.rows.size()) {
      for (const auto& [id, row] : index[i]) {
        if (!index[0].count(id)) {
          throw DataError("combine: speaker '" + id + "' missing modality '" +
                          tables.front().modality + "'");
        }
      }
    }
  }
  return out;
}

double LinearModel::Logit(std::span<const double> x) const {
  if (x.size() != weight.value.rows()) {
    throw DimensionError("linear classifier: input dim " + std::to_string(x.size()) +
                         " vs " + std::to_string(weight.value.rows()));
  }
  double z = bias.value[0];
  for (size_t i = 0; i < x.size(); ++i) z += x[i] * weight.value[i];
  return z;
}

LinearModel TrainLinear(const FeatureTable& table, const TrainConfig& tc, uint64_t seed) {
  tc.Validate();
  std::vector<const FeatureRow*> rows;
  for (const auto& r : table.rows) {
    if (r.split == store::Split::kTrain) rows.push_back(&r);
  }
  if (rows.empty()) throw DataError("fusion: empty training split");

  const nn::SeededRng root(seed);
  LinearModel model;
  model.weight = nn::Param("cls.w", table.dim, 1);
  nn::SeededRng init = root.Split("init");
  nn::InitUniformFanIn(model.weight, init);
  nn::AdamW opt({&model.weight, &model.bias}, {.lr = tc.lr, .weight_decay = tc.weight_decay});

  const nn::SeededRng shuffle_root = root.Split("shuffle");
  std::vector<size_t> order(rows.size());
  for (size_t epoch = 0; epoch < tc.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), size_t{0});
    nn::SeededRng shuffle = shuffle_root.Split(epoch);
    shuffle.Shuffle(order);
    for (size_t begin = 0; begin < order.size(); begin += tc.batch_speakers) {
      const size_t end = std::min(order.size(), begin + tc.batch_speakers);
      const double scale = 1.0 / static_cast<double>(end - begin);
      opt.ZeroGrad();
      for (size_t i = begin; i < end; ++i) {
        const FeatureRow& r = *rows[order[i]];
        const auto bce = nn::BceWithLogits(model.Logit(r.vector), r.label == store::Label::kAD);
        if (!std::isfinite(bce.loss)) {
          throw NumericError("fusion: non-finite loss at epoch " + std::to_string(epoch));
        }
        const double g = bce.dlogit * scale;
        for (size_t d = 0; d < r.vector.size(); ++d) model.weight.grad[d] += g * r.vector[d];
        model.bias.grad[0] += g;
      }
      opt.Step();
    }
  }
  opt.ZeroGrad();
  return model;
}

Metrics EvaluateLinear(const FeatureTable& table, const LinearModel& model, store::Split split) {
  std::vector<store::Label> truth, predicted;
  for (const auto& r : table.rows) {
    if (r.split != split) continue;
    truth.push_back(r.label);
    predicted.push_back(head::DecideAD(model.Logit(r.vector)) ? store::Label::kAD
                                                              : store::Label::kHC);
  }
  if (truth.empty()) {
    throw DataError("fusion: empty split '" + std::string(store::SplitName(split)) + "'");
  }
  return ComputeMetrics(truth, predicted);
}

RunReport FusionMultiRun(const FeatureTable& table, const TrainConfig& tc) {
  tc.Validate();
  RunReport report;
  report.tag = table.modality;
  report.config = {{"classifier", {{"type", "linear"}, {"input_dim", table.dim}}},
                   {"train", TrainConfigToJson(tc)}};
  for (uint64_t seed : tc.seeds) {
    const LinearModel model = TrainLinear(table, tc, seed);
    SeedRun run;
    run.seed = seed;
    run.metrics = EvaluateLinear(table, model, store::Split::kTest);
    double loss = 0.0;
    size_t n = 0;
    for (const auto& r : table.rows) {
      if (r.split != store::Split::kTrain) continue;
      loss += nn::BceWithLogits(model.Logit(r.vector), r.label == store::Label::kAD).loss;
      ++n;
    }
    run.final_loss = loss / static_cast<double>(n);
    spdlog::info("{} seed {}: accuracy {:.4f}, macro F1 {:.4f}", table.modality, seed,
                 run.metrics.accuracy, run.metrics.macro_f1);
    report.runs.push_back(run);
  }
  report.Summarize();
  return report;
}

}  // namespace adcue::train
