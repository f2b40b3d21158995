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

#include "adcue/train/trainer.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "adcue/error.h"
#include "adcue/nn/adamw.h"
#include "adcue/nn/ops.h"
#include "adcue/nn/rng.h"
#include "spdlog/spdlog.h"

namespace adcue::train {

using nlohmann::json;

void TrainConfig::Validate() const {
  if (!(lr > 0.0) || !std::isfinite(lr)) throw ConfigError("train: lr must be > 0");
  if (!(weight_decay >= 0.0) || !std::isfinite(weight_decay)) {
    throw ConfigError("train: weight_decay must be >= 0");
  }
  if (batch_speakers == 0) throw ConfigError("train: batch_speakers must be >= 1");
  if (epochs == 0) throw ConfigError("train: epochs must be >= 1");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ConfigError("train: dropout must lie in [0, 1)");
  if (seeds.empty()) throw ConfigError("train: seeds must be nonempty");
  if (folds < 2) throw ConfigError("train: folds must be >= 2");
}

json TrainConfigToJson(const TrainConfig& c) {
  return {{"lr", c.lr},
          {"weight_decay", c.weight_decay},
          {"batch_speakers", c.batch_speakers},
          {"epochs", c.epochs},
          {"dropout", c.dropout},
          {"seeds", c.seeds},
          {"augmentation", c.augmentation},
          {"folds", c.folds}};
}

TrainConfig TrainConfigFromJson(const json& j) {
  TrainConfig c;
  c.lr = j.at("lr").get<double>();
  c.weight_decay = j.at("weight_decay").get<double>();
  c.batch_speakers = j.at("batch_speakers").get<size_t>();
  c.epochs = j.at("epochs").get<size_t>();
  c.dropout = j.at("dropout").get<double>();
  c.seeds = j.at("seeds").get<std::vector<uint64_t>>();
  c.augmentation = j.at("augmentation").get<bool>();
  c.folds = j.at("folds").get<size_t>();
  return c;
}

json HeadConfigToJson(const head::HeadConfig& c) {
  return {{"hidden_in", c.hidden_in},
          {"layers", c.layers},
          {"aggregation", head::AggregationName(c.aggregation)},
          {"ms_layer", c.ms_layer},
          {"proj_dims", c.proj_dims},
          {"dropout_rate", c.dropout_rate},
          {"attn_dim", c.attn_dim},
          {"pooling", head::PoolingName(c.pooling)}};
}

head::HeadConfig HeadConfigFromJson(const json& j) {
  head::HeadConfig c;
  c.hidden_in = j.at("hidden_in").get<size_t>();
  c.layers = j.at("layers").get<size_t>();
  const auto agg = j.at("aggregation").get<std::string>();
  if (agg == "ws") {
    c.aggregation = head::Aggregation::kWeightedSum;
  } else if (agg == "ms") {
    c.aggregation = head::Aggregation::kMaxSingle;
  } else {
    throw ConfigError("unknown aggregation '" + agg + "'");
  }
  c.ms_layer = j.at("ms_layer").get<size_t>();
  c.proj_dims = j.at("proj_dims").get<std::vector<size_t>>();
  c.dropout_rate = j.at("dropout_rate").get<double>();
  c.attn_dim = j.at("attn_dim").get<size_t>();
  const auto pool = j.at("pooling").get<std::string>();
  if (pool == "attentive") {
    c.pooling = head::Pooling::kAttentive;
  } else if (pool == "mean") {
    c.pooling = head::Pooling::kMean;
  } else {
    throw ConfigError("unknown pooling '" + pool + "'");
  }
  return c;
}

namespace {

// One augmented view per segment per epoch, or the original when a
// segment has none.
std::vector<int> PickViews(const SpeakerData& s, uint64_t seed, size_t epoch) {
  std::vector<int> views(s.segments.size(), -1);
  for (size_t k = 0; k < s.segments.size(); ++k) {
    const size_t n = k < s.augmented.size() ? s.augmented[k].size() : 0;
    if (n == 0) continue;
    const uint64_t h = nn::SeededRng::Mix({seed, nn::SeededRng::Hash(s.speaker_id), k, epoch});
    views[k] = static_cast<int>(h % n);
  }
  return views;
}

}  // namespace

TrainResult Train(const Dataset& data, const head::HeadConfig& cfg_in, const TrainConfig& tc,
                  uint64_t seed) {
  tc.Validate();
  const auto& speakers = data.speakers();
  if (speakers.empty()) throw DataError("train: empty training split");

  head::HeadConfig cfg = data.Adapt(cfg_in);
  cfg.dropout_rate = tc.dropout;
  cfg.Validate();

  const nn::SeededRng root(seed);
  nn::SeededRng init = root.Split("init");
  TrainResult result{cfg, head::HeadParams::Init(cfg, init), {}};
  head::HeadParams& params = result.params;
  nn::AdamW opt(params.Trainable(cfg), {.lr = tc.lr, .weight_decay = tc.weight_decay});

  const nn::SeededRng shuffle_root = root.Split("shuffle");
  const nn::SeededRng dropout_root = root.Split("dropout");
  std::vector<size_t> order(speakers.size());
  for (size_t epoch = 0; epoch < tc.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), size_t{0});
    nn::SeededRng shuffle = shuffle_root.Split(epoch);
    shuffle.Shuffle(order);
    const nn::SeededRng epoch_dropout = dropout_root.Split(epoch);

    double epoch_loss = 0.0;
    for (size_t begin = 0, batch = 0; begin < order.size();
         begin += tc.batch_speakers, ++batch) {
      const size_t end = std::min(order.size(), begin + tc.batch_speakers);
      const double scale = 1.0 / static_cast<double>(end - begin);
      params.ZeroGrad();
      for (size_t i = begin; i < end; ++i) {
        const SpeakerData& s = *speakers[order[i]];
        std::vector<int> views;
        if (tc.augmentation) views = PickViews(s, seed, epoch);
        const auto inputs = data.Inputs(s, tc.augmentation ? &views : nullptr);
        nn::SeededRng drop = epoch_dropout.Split(s.speaker_id);
        head::SpeakerCache cache;
        const double logit = head::ForwardSpeaker(inputs, cfg, params, drop, true, &cache);
        const auto bce = nn::BceWithLogits(logit, s.label == store::Label::kAD ? 1 : 0);
        if (!std::isfinite(bce.loss)) {
          throw NumericError("non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                             std::to_string(batch) + " (speaker '" + s.speaker_id + "')");
        }
        head::BackwardSpeaker(cache, cfg, params, bce.dlogit * scale);
        epoch_loss += bce.loss;
      }
      try {
        opt.Step();
      } catch (const NumericError& e) {
        throw NumericError("epoch " + std::to_string(epoch) + ", batch " +
                           std::to_string(batch) + ": " + e.what());
      }
    }
    result.loss_history.push_back(epoch_loss / static_cast<double>(speakers.size()));
    SPDLOG_DEBUG("seed {} epoch {} loss {:.6f}", seed, epoch, result.loss_history.back());
  }
  params.ZeroGrad();
  return result;
}

std::vector<store::Label> Predict(const Dataset& data, const head::HeadConfig& cfg,
                                  const head::HeadParams& params) {
  std::vector<store::Label> out;
  out.reserve(data.speakers().size());
  nn::SeededRng unused(0);
  for (const SpeakerData* s : data.speakers()) {
    const auto inputs = data.Inputs(*s);
    const double logit = head::ForwardSpeaker(inputs, cfg, params, unused, false);
    if (!std::isfinite(logit)) {
      throw NumericError("non-finite logit for speaker '" + s->speaker_id + "'");
    }
    out.push_back(head::DecideAD(logit) ? store::Label::kAD : store::Label::kHC);
  }
  return out;
}

Metrics Evaluate(const Dataset& data, const head::HeadConfig& cfg,
                 const head::HeadParams& params, store::Split split) {
  for (const nn::Param* p : params.All()) {
    if (!p->value.AllFinite()) throw NumericError("evaluate: parameter '" + p->name + "' is not finite");
  }
  const Dataset subset = data.Subset(split);
  if (subset.speakers().empty()) {
    throw DataError("evaluate: empty split '" + std::string(store::SplitName(split)) + "'");
  }
  const auto predicted = Predict(subset, cfg, params);
  std::vector<store::Label> truth;
  for (const SpeakerData* s : subset.speakers()) truth.push_back(s->label);
  return ComputeMetrics(truth, predicted);
}

std::pair<double, double> MeanStd(std::span<const double> xs) {
  if (xs.empty()) return {0.0, 0.0};
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  return {mean, std::sqrt(var / n)};
}

void RunReport::Summarize() {
  std::vector<double> acc, f1;
  for (const auto& r : runs) {
    acc.push_back(r.metrics.accuracy);
    f1.push_back(r.metrics.macro_f1);
  }
  std::tie(mean_accuracy, std_accuracy) = MeanStd(acc);
  std::tie(mean_macro_f1, std_macro_f1) = MeanStd(f1);
}

json RunReportToJson(const RunReport& r) {
  json runs = json::array();
  for (const auto& s : r.runs) {
    runs.push_back({{"seed", s.seed},
                    {"final_loss", s.final_loss},
                    {"metrics", MetricsToJson(s.metrics)}});
  }
  return {{"tag", r.tag},
          {"runs", runs},
          {"mean_accuracy", r.mean_accuracy},
          {"std_accuracy", r.std_accuracy},
          {"mean_macro_f1", r.mean_macro_f1},
          {"std_macro_f1", r.std_macro_f1},
          {"layer", r.layer},
          {"config", r.config}};
}

RunReport RunReportFromJson(const json& j) {
  RunReport r;
  r.tag = j.at("tag").get<std::string>();
  for (const auto& s : j.at("runs")) {
    r.runs.push_back({s.at("seed").get<uint64_t>(), MetricsFromJson(s.at("metrics")),
                      s.at("final_loss").get<double>()});
  }
  r.mean_accuracy = j.at("mean_accuracy").get<double>();
  r.std_accuracy = j.at("std_accuracy").get<double>();
  r.mean_macro_f1 = j.at("mean_macro_f1").get<double>();
  r.std_macro_f1 = j.at("std_macro_f1").get<double>();
  r.layer = j.at("layer").get<long>();
  r.config = j.at("config");
  return r;
}

RunReport MultiRun(const Dataset& data, const head::HeadConfig& cfg, const TrainConfig& tc,
                   const std::string& tag, const SeedCallback& on_seed) {
  tc.Validate();
  const Dataset train = data.Subset(store::Split::kTrain);
  RunReport report;
  report.tag = tag;
  for (uint64_t seed : tc.seeds) {
    TrainResult model = Train(train, cfg, tc, seed);
    SeedRun run;
    run.seed = seed;
    run.final_loss = model.loss_history.back();
    run.metrics = Evaluate(data, model.config, model.params, store::Split::kTest);
    spdlog::info("{} seed {}: accuracy {:.4f}, macro F1 {:.4f}", tag, seed,
                 run.metrics.accuracy, run.metrics.macro_f1);
    report.runs.push_back(run);
    if (report.runs.size() == 1) {
      report.layer = model.config.aggregation == head::Aggregation::kMaxSingle
                         ? static_cast<long>(model.config.ms_layer)
                         : -1;
      report.config = {{"head", HeadConfigToJson(model.config)},
                       {"train", TrainConfigToJson(tc)}};
    }
    if (on_seed) on_seed(seed, model);
  }
  report.Summarize();
  return report;
}

}  // namespace adcue::train
