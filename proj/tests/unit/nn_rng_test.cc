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


#include <algorithm>
#include <numeric>
#include <set>

#include "adcue/error.h"
#include "adcue/nn/rng.h"
#include "gtest/gtest.h"

namespace adcue::nn {
namespace {

TEST(SeededRngTest, SameSeedSameSequence) {
  SeededRng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = a.NextU64();
    EXPECT_EQ(x, b.NextU64());
    differs = differs || x != c.NextU64();
  }
  EXPECT_TRUE(differs);
}

TEST(SeededRngTest, FirstOutputIsTheStandardEngineValue) {
  // The 10000th output of a default-seeded mt19937_64 is fixed by the
  // C++ standard.
  SeededRng rng(5489);
  uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = rng.NextU64();
  EXPECT_EQ(x, 9981545732273789042ULL);
}

TEST(SeededRngTest, SplitDependsOnlyOnParentSeedAndKey) {
  SeededRng parent(7);
  const uint64_t before = parent.Split("x").NextU64();
  parent.NextU64();
  parent.NextU64();
  EXPECT_EQ(parent.Split("x").NextU64(), before);
  EXPECT_NE(parent.Split("y").NextU64(), before);
  EXPECT_NE(parent.Split(1).NextU64(), parent.Split(2).NextU64());
}

TEST(SeededRngTest, UniformStaysInRange) {
  SeededRng rng(1);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.01);
}

TEST(SeededRngTest, UniformIntCoversRangeEvenly) {
  SeededRng rng(2);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[rng.UniformInt(7)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
  EXPECT_THROW(rng.UniformInt(0), ConfigError);
}

TEST(SeededRngTest, NormalMoments) {
  SeededRng rng(3);
  double s = 0.0, s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.Normal();
    s += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(SeededRngTest, TriangularIsSymmetricAndBounded) {
  SeededRng rng(4);
  double s = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double t = rng.Triangular();
    ASSERT_GT(t, -1.0);
    ASSERT_LT(t, 1.0);
    s += t;
  }
  EXPECT_NEAR(s / 100000.0, 0.0, 0.01);
}

TEST(SeededRngTest, ShuffleIsAPermutation) {
  SeededRng rng(5);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  std::vector<int> w = v;
  rng.Shuffle(w);
  EXPECT_NE(v, w);
  std::sort(w.begin(), w.end());
  EXPECT_EQ(v, w);
}

}  // namespace
}  // namespace adcue::nn
