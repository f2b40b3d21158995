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

#ifndef ADCUE_TRAIN_TRAINER_H_
#define ADCUE_TRAIN_TRAINER_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adcue/head/head.h"
#include "adcue/store/manifest.h"
#include "adcue/train/dataset.h"
#include "adcue/train/metrics.h"
#include "json.hpp"

namespace adcue::train {

struct TrainConfig {
  double lr = 1e-4;
  double weight_decay = 1e-5;
  size_t batch_speakers = 16;
  size_t epochs = 50;
  double dropout = 0.25;  // overrides HeadConfig::dropout_rate
  std::vector<uint64_t> seeds = {0, 1, 2, 3, 4};
  bool augmentation = false;
  size_t folds = 5;  // layer sweep only

  void Validate() const;
};

nlohmann::json TrainConfigToJson(const TrainConfig& c);
TrainConfig TrainConfigFromJson(const nlohmann::json& j);
nlohmann::json HeadConfigToJson(const head::HeadConfig& c);
head::HeadConfig HeadConfigFromJson(const nlohmann::json& j);

struct TrainResult {
  head::HeadConfig config;
  head::HeadParams params;
  std::vector<double> loss_history;  // mean speaker loss per epoch
};

// Trains on every speaker of `data`. Each epoch shuffles the speakers with
// a stream keyed by (seed, epoch) and runs one AdamW step per batch of
// `batch_speakers` speakers on the batch-mean BCE.
TrainResult Train(const Dataset& data, const head::HeadConfig& cfg, const TrainConfig& tc,
                  uint64_t seed);

// Eval-mode decisions for every speaker of `data`, in dataset order.
std::vector<store::Label> Predict(const Dataset& data, const head::HeadConfig& cfg,
                                  const head::HeadParams& params);

// Metrics over the speakers of `split` (dropout off, no augmentation).
Metrics Evaluate(const Dataset& data, const head::HeadConfig& cfg,
                 const head::HeadParams& params, store::Split split);

struct SeedRun {
  uint64_t seed = 0;
  Metrics metrics;
  double final_loss = 0.0;
};

struct RunReport {
  std::string tag;       // feature set, e.g. "audio" or "audio+text"
  std::vector<SeedRun> runs;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;  // population standard deviation
  double mean_macro_f1 = 0.0;
  double std_macro_f1 = 0.0;
  long layer = -1;            // MS layer used, -1 for weighted sum
  nlohmann::json config;      // snapshot of the head and train configs

  // Recomputes the summary statistics from `runs`.
  void Summarize();
};

nlohmann::json RunReportToJson(const RunReport& r);
RunReport RunReportFromJson(const nlohmann::json& j);

// Mean and population standard deviation.
std::pair<double, double> MeanStd(std::span<const double> xs);

// Called after each seed with its trained model.
using SeedCallback = std::function<void(uint64_t seed, const TrainResult&)>;

// Trains on the train split and evaluates on the test split once per seed.
RunReport MultiRun(const Dataset& data, const head::HeadConfig& cfg, const TrainConfig& tc,
                   const std::string& tag, const SeedCallback& on_seed = {});

}  // namespace adcue::train

#endif  // ADCUE_TRAIN_TRAINER_H_
