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


#include <string>

#include <gtest/gtest.h>

#include "adcue/cli/config.h"
#include "adcue/error.h"

namespace adcue::cli {
namespace {

TEST(PipelineConfigTest, ParsesEverySection) {
  const PipelineConfig c = ParsePipelineConfig(R"(
manifest: data/manifest.json
out_dir: /tmp/out
modality: text
tag: text-l4
segment: {window_s: 20, hop_ratio: 0.5, min_tail_s: 2}
augment: {pitch_cents: 50, speed_rate: 0.02, dither_amplitude: 0}
head:
  aggregation: ws
  ms_layer: 4
  proj_dims: [16, 8]
  attn_dim: 4
  pooling: mean
train:
  lr: 0.001
  weight_decay: 0
  batch_speakers: 8
  epochs: 10
  dropout: 0.1
  seeds: [3, 4]
  augmentation: true
  folds: 3
keywords: {category: verbs, layer: 2, file: kw.txt}
)",
                                               "/cfg");
  EXPECT_EQ(c.manifest, "/cfg/data/manifest.json");
  EXPECT_EQ(c.out_dir, "/tmp/out");
  EXPECT_EQ(c.modality, train::Modality::kText);
  EXPECT_EQ(c.EffectiveTag(), "text-l4");
  EXPECT_EQ(c.segment.window_s, 20.0);
  EXPECT_EQ(c.augment.pitch_cents, 50.0);
  EXPECT_EQ(c.head.aggregation, head::Aggregation::kWeightedSum);
  EXPECT_EQ(c.head.proj_dims, (std::vector<size_t>{16, 8}));
  EXPECT_EQ(c.head.pooling, head::Pooling::kMean);
  EXPECT_EQ(c.train.lr, 0.001);
  EXPECT_EQ(c.train.seeds, (std::vector<uint64_t>{3, 4}));
  EXPECT_TRUE(c.train.augmentation);
  EXPECT_EQ(c.head.dropout_rate, 0.1);
  EXPECT_EQ(c.keywords.category, keywords::Category::kVerbs);
  EXPECT_EQ(c.keywords.file, "/cfg/kw.txt");
}

TEST(PipelineConfigTest, DefaultsApplyToMissingKeys) {
  const PipelineConfig c = ParsePipelineConfig("manifest: m.json\n", "");
  EXPECT_EQ(c.EffectiveTag(), "audio");
  EXPECT_EQ(c.train.lr, 1e-4);
  EXPECT_EQ(c.train.epochs, 50u);
  EXPECT_EQ(c.train.batch_speakers, 16u);
  EXPECT_EQ(c.train.seeds.size(), 5u);
  EXPECT_EQ(c.head.proj_dims, (std::vector<size_t>{8, 8}));
  EXPECT_EQ(c.segment.window_s, 30.0);
}

TEST(PipelineConfigTest, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(ParsePipelineConfig("manifset: m.json\n", ""), ConfigError);
  EXPECT_THROW(ParsePipelineConfig("train: {learning_rate: 0.1}\n", ""), ConfigError);
  EXPECT_THROW(ParsePipelineConfig("head: {aggregation: max}\n", ""), ConfigError);
  EXPECT_THROW(ParsePipelineConfig("modality: video\n", ""), ConfigError);
  EXPECT_THROW(ParsePipelineConfig("train: {epochs: -3}\n", ""), ConfigError);
  EXPECT_THROW(ParsePipelineConfig("train: {lr: abc}\n", ""), ConfigError);
  EXPECT_THROW(ParsePipelineConfig("keywords: {category: adjectives}\n", ""), ConfigError);
  EXPECT_THROW(ParsePipelineConfig("train: [1, 2]\n", ""), ConfigError);
  EXPECT_THROW(ParsePipelineConfig("a: [\n", ""), ConfigError);
  EXPECT_THROW(LoadPipelineConfig("/nonexistent.yaml"), Error);
}

TEST(PipelineConfigTest, DatasetOptionsFollowTheConfig) {
  PipelineConfig c = ParsePipelineConfig("head: {aggregation: ms, ms_layer: 5}\n", "");
  EXPECT_EQ(MakeDatasetOptions(c).single_layer, 5u);
  c = ParsePipelineConfig("head: {aggregation: ws}\n", "");
  EXPECT_FALSE(MakeDatasetOptions(c).single_layer.has_value());
  c = ParsePipelineConfig("modality: corr\nkeywords: {category: none, layer: 3}\n", "");
  const auto o = MakeDatasetOptions(c);
  EXPECT_EQ(o.modality, train::Modality::kCorr);
  EXPECT_EQ(o.keyword_category, keywords::Category::kNone);
  EXPECT_EQ(o.keyword_layer, 3u);
}

TEST(PipelineConfigTest, JsonSnapshotCarriesEveryField) {
  const auto j = PipelineConfigToJson(ParsePipelineConfig("out_dir: /x\ntag: t\n", ""));
  EXPECT_EQ(j["out_dir"], "/x");
  EXPECT_EQ(j["tag"], "t");
  EXPECT_EQ(j["train"]["epochs"], 50);
  EXPECT_EQ(j["head"]["aggregation"], "ms");
}

TEST(SynthSpecTest, ParsesTopLevelAndTextFields) {
  const store::SynthSpec s = ParseSynthSpec(R"(
n_train_speakers: 10
n_test_speakers: 6
class_separation: 0
seed: 42
text: {layers: 3, keyword_layer: 1, informative_layer: 1}
)");
  EXPECT_EQ(s.n_train_speakers, 10);
  EXPECT_EQ(s.class_separation, 0.0);
  EXPECT_EQ(s.seed, 42u);
  ASSERT_TRUE(s.text.has_value());
  EXPECT_EQ(s.text->layers, 3);
  EXPECT_EQ(s.text->keyword_layer, 1);
  EXPECT_FALSE(ParseSynthSpec("seed: 1\n").text.has_value());
  EXPECT_THROW(ParseSynthSpec("sed: 1\n"), ConfigError);
  EXPECT_THROW(ParseSynthSpec("text: {layerz: 1}\n"), ConfigError);
}

}  // namespace
}  // namespace adcue::cli
