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

#ifndef ADCUE_NN_OPS_H_
#define ADCUE_NN_OPS_H_

#include <span>
#include <vector>

#include "adcue/nn/matrix.h"
#include "adcue/nn/rng.h"

namespace adcue::nn {

// Differentiable building blocks with hand-written backward passes.
//
// Backward functions accumulate (+=) into Param::grad; the caller zeroes
// gradients before each batch.

// out[t] = x[t] * w + b, with x: T x Din, w: Din x Dout, b: 1 x Dout.
Matrix LinearForward(const Matrix& x, const Param& w, const Param& b);

// Returns grad_x = grad_out * w^T (empty when `want_grad_x` is false) and
// accumulates w.grad += x^T * grad_out, b.grad += colsum(grad_out).
Matrix LinearBackward(const Matrix& x, Param& w, Param& b, const Matrix& grad_out,
                      bool want_grad_x = true);

constexpr double kLayerNormEps = 1e-5;

struct LayerNormCache {
  Matrix normalized;            // x_hat, before gamma/beta
  std::vector<double> inv_std;  // one per row
};

// Per-row normalization to zero mean and unit (biased) variance, followed
// by the affine gamma/beta transform. gamma and beta are 1 x D.
Matrix LayerNormForward(const Matrix& x, const Param& gamma, const Param& beta,
                        double eps = kLayerNormEps, LayerNormCache* cache = nullptr);
Matrix LayerNormBackward(const LayerNormCache& cache, Param& gamma, Param& beta,
                         const Matrix& grad_out);

// Numerically stable softmax (max subtracted first). N >= 1.
std::vector<double> Softmax(std::span<const double> logits);
// Given p = softmax(z) and dL/dp, returns dL/dz.
std::vector<double> SoftmaxBackward(std::span<const double> probs,
                                    std::span<const double> grad_probs);

double Sigmoid(double x);

// Inverted dropout. `mask` receives the per-element multiplier (0 or
// 1/(1-rate)); it is filled with ones when dropout is inactive.
Matrix Dropout(const Matrix& x, double rate, SeededRng& rng, bool training,
               Matrix* mask = nullptr);

struct BceResult {
  double loss;
  double dlogit;
};

// softplus(logit) - label * logit and its derivative sigmoid(logit) - label.
BceResult BceWithLogits(double logit, int label);

// Uniform(-1/sqrt(fan_in), +1/sqrt(fan_in)) with fan_in = rows.
void InitUniformFanIn(Param& p, SeededRng& rng);

}  // namespace adcue::nn

#endif  // ADCUE_NN_OPS_H_
