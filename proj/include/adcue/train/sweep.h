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

#ifndef ADCUE_TRAIN_SWEEP_H_
#define ADCUE_TRAIN_SWEEP_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "adcue/head/head.h"
#include "adcue/train/dataset.h"
#include "adcue/train/trainer.h"

namespace adcue::train {

// Speaker-level stratified folds: each class is shuffled and dealt
// round-robin, so fold sizes differ by at most one per class. Returns
// held-out index lists. When a class has fewer than `k` members, k is
// reduced with a warning; fewer than 2 folds is a DataError.
std::vector<std::vector<size_t>> StratifiedFolds(const std::vector<store::Label>& labels,
                                                 size_t k, uint64_t seed);

struct SweepPoint {
  size_t layer = 0;
  double mean = 0.0;  // mean held-out accuracy over folds
  double std = 0.0;   // population standard deviation over folds
};

struct SweepResult {
  std::vector<SweepPoint> curve;
  size_t best_layer = 0;  // argmax of mean; lowest index on ties
  size_t folds = 0;
};

// Cross-validated single-layer accuracy of every layer, computed on the
// train split only.
SweepResult LayerSweep(const TrainSplit& train, const head::HeadConfig& base,
                       const TrainConfig& tc, uint64_t seed);

// Same, for data loaded one layer at a time: `load_layer(l)` returns the
// train split holding only layer l.
using LayerLoader = std::function<TrainSplit(size_t layer)>;
SweepResult LayerSweep(const LayerLoader& load_layer, size_t layers,
                       const head::HeadConfig& base, const TrainConfig& tc, uint64_t seed);

// "layer,mean,std" header plus one row per layer.
std::string SweepCsv(const SweepResult& r);

}  // namespace adcue::train

#endif  // ADCUE_TRAIN_SWEEP_H_
