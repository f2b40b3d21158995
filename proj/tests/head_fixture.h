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


#ifndef ADCUE_TESTS_HEAD_FIXTURE_H_
#define ADCUE_TESTS_HEAD_FIXTURE_H_

#include <vector>

#include "adcue/head/head.h"
#include "adcue/nn/gradcheck.h"
#include "adcue/nn/ops.h"
#include "adcue/nn/rng.h"
#include "adcue/store/embedding.h"

namespace adcue::testing {

// Two random segments of L x T x H, the second with two padded frames.
struct TinySpeaker {
  std::vector<store::EmbeddingTensor> tensors;
  std::vector<head::SegmentInput> inputs;

  TinySpeaker(size_t layers, size_t frames, size_t hidden, uint64_t seed) {
    nn::SeededRng rng(seed);
    for (int k = 0; k < 2; ++k) {
      store::EmbeddingTensor e(layers, frames + 2 * k, hidden);
      for (float& v : e.values()) v = static_cast<float>(rng.Normal());
      tensors.push_back(std::move(e));
    }
    inputs.push_back({&tensors[0], 0, 0.0});
    inputs.push_back({&tensors[1], frames, 7.5});
  }
};

// Every trainable parameter gets nonzero random values so no gradient
// vanishes by construction.
inline head::HeadParams RandomHeadParams(const head::HeadConfig& cfg, uint64_t seed) {
  nn::SeededRng rng(seed);
  head::HeadParams p = head::HeadParams::Init(cfg, rng);
  for (nn::Param* q : p.All()) {
    for (double& v : q->value.values()) v = 0.5 * rng.Normal();
  }
  return p;
}

// Largest relative error between backprop and central differences of the
// training-mode BCE loss. Dropout masks are replayed from `mask_seed`.
inline nn::GradCheckResult HeadGradientCheck(const head::HeadConfig& cfg,
                                             head::HeadParams& params,
                                             const std::vector<head::SegmentInput>& inputs,
                                             bool label, uint64_t mask_seed, double h) {
  auto loss = [&]() {
    nn::SeededRng rng(mask_seed);
    const double logit = head::ForwardSpeaker(inputs, cfg, params, rng, true);
    return nn::BceWithLogits(logit, label).loss;
  };
  params.ZeroGrad();
  nn::SeededRng rng(mask_seed);
  head::SpeakerCache cache;
  const double logit = head::ForwardSpeaker(inputs, cfg, params, rng, true, &cache);
  head::BackwardSpeaker(cache, cfg, params, nn::BceWithLogits(logit, label).dlogit);
  const std::vector<nn::Param*> trainable = params.Trainable(cfg);
  const auto numeric = nn::FiniteDifferenceGradient(loss, trainable, h);
  return nn::CompareGradients(trainable, numeric);
}

}  // namespace adcue::testing

#endif  // ADCUE_TESTS_HEAD_FIXTURE_H_
