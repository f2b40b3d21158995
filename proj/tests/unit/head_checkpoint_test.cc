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


#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "adcue/error.h"
#include "adcue/head/checkpoint.h"
#include "adcue/store/binary_io.h"
#include "head_fixture.h"
#include "test_util.h"

namespace adcue::head {
namespace {

Checkpoint Sample(Aggregation agg) {
  Checkpoint c;
  c.config.hidden_in = 6;
  c.config.layers = 3;
  c.config.aggregation = agg;
  c.config.ms_layer = 2;
  c.config.proj_dims = {5, 4};
  c.config.attn_dim = 3;
  c.config.pooling = Pooling::kMean;
  c.params = testing::RandomHeadParams(c.config, 3);
  // Stored as float32, so keep values exactly representable.
  for (nn::Param* p : c.params.All()) {
    for (double& v : p->value.values()) v = static_cast<float>(v);
  }
  c.attributes = {{"seed", 4.0}, {"keyword_layer", 2.0}};
  return c;
}

TEST(CheckpointTest, RoundTripIsExact) {
  for (Aggregation agg : {Aggregation::kWeightedSum, Aggregation::kMaxSingle}) {
    testing::TempDir dir;
    const Checkpoint c = Sample(agg);
    SaveCheckpoint(c, dir / "c.adhp");
    const Checkpoint back = LoadCheckpoint(dir / "c.adhp");
    EXPECT_EQ(back.config.aggregation, agg);
    EXPECT_EQ(back.config.ms_layer, 2u);
    EXPECT_EQ(back.config.proj_dims, c.config.proj_dims);
    EXPECT_EQ(back.config.pooling, Pooling::kMean);
    EXPECT_EQ(back.attributes, c.attributes);
    auto a = c.params.All();
    auto b = back.params.All();
    ASSERT_EQ(a.size(), b.size());
    for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i]->value, b[i]->value) << a[i]->name;
  }
}

TEST(CheckpointTest, HeaderLayout) {
  const auto bytes = EncodeCheckpoint(Sample(Aggregation::kWeightedSum));
  ASSERT_GT(bytes.size(), 6u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "ADHP");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[5], 0);
}

TEST(CheckpointTest, RejectsCorruptFiles) {
  auto bytes = EncodeCheckpoint(Sample(Aggregation::kWeightedSum));
  auto magic = bytes;
  magic[1] = 'X';
  EXPECT_THROW(DecodeCheckpoint(magic, "x"), DataError);
  auto version = bytes;
  version[4] = 9;
  EXPECT_THROW(DecodeCheckpoint(version, "x"), DataError);
  for (size_t cut : {size_t{3}, size_t{9}, bytes.size() - 1}) {
    EXPECT_THROW(DecodeCheckpoint(std::span<const char>(bytes.data(), cut), "x"), DataError)
        << cut;
  }
  EXPECT_THROW(LoadCheckpoint("/nonexistent/c.adhp"), DataError);
}

TEST(CheckpointTest, RejectsNonFiniteParameters) {
  Checkpoint c = Sample(Aggregation::kMaxSingle);
  c.params.cls_b.value[0] = std::nan("");
  EXPECT_THROW(DecodeCheckpoint(EncodeCheckpoint(c), "x"), Error);
}

}  // namespace
}  // namespace adcue::head
