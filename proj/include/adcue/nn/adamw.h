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

#ifndef ADCUE_NN_ADAMW_H_
#define ADCUE_NN_ADAMW_H_

#include <cstdint>
#include <span>
#include <vector>

#include "adcue/nn/matrix.h"

namespace adcue::nn {

struct HyperParams {
  double lr = 1e-4;
  double weight_decay = 1e-5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  void Validate() const;
};

struct AdamWState {
  Matrix m;
  Matrix v;
  int64_t step = 0;
};

AdamWState MakeAdamWState(const Param& p);

// One AdamW update with decoupled weight decay:
//   w <- w - lr * wd * w
//   w <- w - lr * m_hat / (sqrt(v_hat) + eps)
// Gradients are read, never cleared. Throws NumericError naming the first
// parameter whose gradient holds a NaN/Inf, before anything is modified.
void AdamWStep(std::span<Param* const> params, std::span<AdamWState> states,
               const HyperParams& h);

// Owns the moment buffers for a fixed parameter list.
class AdamW {
 public:
  AdamW(std::vector<Param*> params, const HyperParams& h);

  void Step() { AdamWStep(params_, states_, hyper_); }
  void ZeroGrad();

  const std::vector<AdamWState>& states() const { return states_; }

 private:
  std::vector<Param*> params_;
  std::vector<AdamWState> states_;
  HyperParams hyper_;
};

}  // namespace adcue::nn

#endif  // ADCUE_NN_ADAMW_H_
