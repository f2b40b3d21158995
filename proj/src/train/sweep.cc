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

#include "adcue/train/sweep.h"

#include <algorithm>

#include "adcue/error.h"
#include "adcue/nn/rng.h"
#include "fmt/format.h"
#include "spdlog/spdlog.h"

namespace adcue::train {

std::vector<std::vector<size_t>> StratifiedFolds(const std::vector<store::Label>& labels,
                                                 size_t k, uint64_t seed) {
  std::vector<size_t> by_class[2];
  for (size_t i = 0; i < labels.size(); ++i) {
    by_class[labels[i] == store::Label::kAD ? 1 : 0].push_back(i);
  }
  const size_t smallest = std::min(by_class[0].size(), by_class[1].size());
  if (smallest < k) {
    spdlog::warn("only {} speakers in the smaller class; using {} folds instead of {}",
                 smallest, smallest, k);
    k = smallest;
  }
  if (k < 2) throw DataError("cross-validation needs at least 2 speakers per class");

  const nn::SeededRng rng(seed);
  std::vector<std::vector<size_t>> folds(k);
  size_t next = 0;
  for (int c = 0; c < 2; ++c) {
    nn::SeededRng shuffle = rng.Split("folds").Split(static_cast<uint64_t>(c));
    shuffle.Shuffle(by_class[c]);
    for (size_t idx : by_class[c]) folds[next++ % k].push_back(idx);
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

namespace {

double FoldAccuracy(const Dataset& data, const std::vector<size_t>& held_out,
                    const head::HeadConfig& cfg, const TrainConfig& tc, uint64_t seed) {
  std::vector<size_t> fit;
  for (size_t i = 0; i < data.speakers().size(); ++i) {
    if (!std::binary_search(held_out.begin(), held_out.end(), i)) fit.push_back(i);
  }
  const Dataset fit_set = data.Select(fit);
  const Dataset eval_set = data.Select(held_out);
  const TrainResult model = Train(fit_set, cfg, tc, seed);
  const auto predicted = Predict(eval_set, model.config, model.params);
  std::vector<store::Label> truth;
  for (const SpeakerData* s : eval_set.speakers()) truth.push_back(s->label);
  return ComputeMetrics(truth, predicted).accuracy;
}

}  // namespace

SweepResult LayerSweep(const LayerLoader& load_layer, size_t layers,
                       const head::HeadConfig& base, const TrainConfig& tc, uint64_t seed) {
  tc.Validate();
  if (layers < 2) throw ConfigError("layer sweep needs at least 2 layers");
  SweepResult result;
  std::vector<std::vector<size_t>> folds;
  for (size_t l = 0; l < layers; ++l) {
    const TrainSplit split = load_layer(l);
    const Dataset& data = split.data();
    if (data.speakers().empty()) throw DataError("layer sweep: empty train split");
    if (folds.empty()) {
      std::vector<store::Label> labels;
      for (const SpeakerData* s : data.speakers()) labels.push_back(s->label);
      folds = StratifiedFolds(labels, tc.folds, seed);
      result.folds = folds.size();
    }
    head::HeadConfig cfg = base;
    cfg.aggregation = head::Aggregation::kMaxSingle;
    cfg.ms_layer = l;
    std::vector<double> acc;
    for (size_t f = 0; f < folds.size(); ++f) {
      acc.push_back(FoldAccuracy(data, folds[f], cfg, tc, nn::SeededRng::Mix({seed, f})));
    }
    const auto [mean, std] = MeanStd(acc);
    spdlog::info("layer {}: cv accuracy {:.4f} +- {:.4f}", l, mean, std);
    result.curve.push_back({l, mean, std});
  }
  for (const auto& p : result.curve) {
    if (p.mean > result.curve[result.best_layer].mean) result.best_layer = p.layer;
  }
  return result;
}

SweepResult LayerSweep(const TrainSplit& train, const head::HeadConfig& base,
                       const TrainConfig& tc, uint64_t seed) {
  if (train.data().layer_preselected()) {
    throw ConfigError("layer sweep needs all layers loaded");
  }
  return LayerSweep([&train](size_t) { return train; }, train.data().layers(), base, tc, seed);
}

std::string SweepCsv(const SweepResult& r) {
  std::string out = "layer,mean,std\n";
  for (const auto& p : r.curve) out += fmt::format("{},{:.6f},{:.6f}\n", p.layer, p.mean, p.std);
  return out;
}

}  // namespace adcue::train
