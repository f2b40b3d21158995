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


#include <vector>

#include <gtest/gtest.h>

#include "adcue/error.h"
#include "adcue/train/metrics.h"
#include "adcue/train/trainer.h"

namespace adcue::train {
namespace {

using store::Label;

TEST(MetricsTest, HandComputedConfusion) {
  const Metrics m = ComputeMetrics(Confusion{.tp = 3, .tn = 2, .fp = 1, .fn = 2});
  EXPECT_DOUBLE_EQ(m.accuracy, 5.0 / 8.0);
  const double f1_ad = 6.0 / 9.0;  // 2tp / (2tp + fp + fn)
  const double f1_hc = 4.0 / 7.0;  // 2tn / (2tn + fn + fp)
  EXPECT_DOUBLE_EQ(m.macro_f1, 0.5 * (f1_ad + f1_hc));
}

TEST(MetricsTest, FromLabelLists) {
  const std::vector<Label> truth = {Label::kAD, Label::kAD, Label::kHC, Label::kHC, Label::kAD};
  const std::vector<Label> pred = {Label::kAD, Label::kHC, Label::kHC, Label::kAD, Label::kAD};
  const Metrics m = ComputeMetrics(truth, pred);
  EXPECT_EQ(m.confusion, (Confusion{.tp = 2, .tn = 1, .fp = 1, .fn = 1}));
  EXPECT_DOUBLE_EQ(m.accuracy, 0.6);
}

TEST(MetricsTest, ConstantPredictorOnBalancedData) {
  const std::vector<Label> truth = {Label::kAD, Label::kHC, Label::kAD, Label::kHC};
  const std::vector<Label> all_ad(4, Label::kAD);
  const Metrics m = ComputeMetrics(truth, all_ad);
  EXPECT_DOUBLE_EQ(m.accuracy, 0.5);
  EXPECT_DOUBLE_EQ(m.macro_f1, 1.0 / 3.0);
}

TEST(MetricsTest, PerfectAndInvertedPredictions) {
  const std::vector<Label> truth = {Label::kAD, Label::kHC, Label::kHC};
  const std::vector<Label> flipped = {Label::kHC, Label::kAD, Label::kAD};
  EXPECT_DOUBLE_EQ(ComputeMetrics(truth, truth).macro_f1, 1.0);
  const Metrics inv = ComputeMetrics(truth, flipped);
  EXPECT_DOUBLE_EQ(inv.accuracy, 0.0);
  EXPECT_DOUBLE_EQ(inv.macro_f1, 0.0);
}

TEST(MetricsTest, RejectsEmptyAndMismatchedInput) {
  EXPECT_THROW(ComputeMetrics(Confusion{}), DataError);
  const std::vector<Label> one = {Label::kAD};
  EXPECT_THROW(ComputeMetrics(one, std::vector<Label>{}), Error);
  EXPECT_DOUBLE_EQ(ClassF1(0, 0, 0), 0.0);
}

TEST(MetricsTest, JsonRoundTrip) {
  const Metrics m = ComputeMetrics(Confusion{.tp = 3, .tn = 2, .fp = 1, .fn = 2});
  const Metrics back = MetricsFromJson(MetricsToJson(m));
  EXPECT_EQ(back.accuracy, m.accuracy);
  EXPECT_EQ(back.macro_f1, m.macro_f1);
  EXPECT_EQ(back.confusion, m.confusion);
}

TEST(SummaryTest, PopulationStandardDeviation) {
  const std::vector<double> xs = {1.0, 3.0};
  EXPECT_EQ(MeanStd(xs), std::make_pair(2.0, 1.0));
  const std::vector<double> one = {0.7};
  EXPECT_EQ(MeanStd(one).second, 0.0);
}

TEST(SummaryTest, ReportJsonRoundTrip) {
  RunReport r;
  r.tag = "audio";
  r.layer = 3;
  r.config = {{"x", 1}};
  for (uint64_t s = 0; s < 3; ++s) {
    SeedRun run;
    run.seed = s;
    run.metrics = ComputeMetrics(Confusion{.tp = 2 + static_cast<long>(s), .tn = 2, .fp = 1, .fn = 1});
    run.final_loss = 0.1 * static_cast<double>(s);
    r.runs.push_back(run);
  }
  r.Summarize();
  const RunReport back = RunReportFromJson(RunReportToJson(r));
  EXPECT_EQ(RunReportToJson(back), RunReportToJson(r));
  EXPECT_EQ(back.layer, 3);
  EXPECT_DOUBLE_EQ(back.mean_accuracy, r.mean_accuracy);
}

TEST(ConfigJsonTest, TrainAndHeadConfigsRoundTrip) {
  TrainConfig t;
  t.lr = 3e-3;
  t.seeds = {7, 8};
  t.augmentation = true;
  EXPECT_EQ(TrainConfigToJson(TrainConfigFromJson(TrainConfigToJson(t))), TrainConfigToJson(t));
  head::HeadConfig h;
  h.aggregation = head::Aggregation::kWeightedSum;
  h.pooling = head::Pooling::kMean;
  h.proj_dims = {16, 4};
  const head::HeadConfig hb = HeadConfigFromJson(HeadConfigToJson(h));
  EXPECT_EQ(hb.aggregation, h.aggregation);
  EXPECT_EQ(hb.pooling, h.pooling);
  EXPECT_EQ(hb.proj_dims, h.proj_dims);
  nlohmann::json bad = HeadConfigToJson(h);
  bad["aggregation"] = "max";
  EXPECT_THROW(HeadConfigFromJson(bad), ConfigError);
}

TEST(ConfigJsonTest, TrainConfigValidation) {
  for (auto mutate : std::vector<void (*)(TrainConfig&)>{
           [](TrainConfig& t) { t.lr = 0.0; }, [](TrainConfig& t) { t.epochs = 0; },
           [](TrainConfig& t) { t.batch_speakers = 0; }, [](TrainConfig& t) { t.dropout = 1.0; },
           [](TrainConfig& t) { t.seeds.clear(); }, [](TrainConfig& t) { t.folds = 1; }}) {
    TrainConfig t;
    mutate(t);
    EXPECT_THROW(t.Validate(), ConfigError);
  }
  EXPECT_NO_THROW(TrainConfig{}.Validate());
}

}  // namespace
}  // namespace adcue::train
