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

#include "adcue/nn/adamw.h"

#include <cmath>

#include "adcue/error.h"

namespace adcue::nn {

void HyperParams::Validate() const {
  if (!(lr > 0.0)) throw ConfigError("adamw: lr must be > 0");
  if (!(weight_decay >= 0.0)) throw ConfigError("adamw: weight_decay must be >= 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw ConfigError("adamw: beta1 must lie in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw ConfigError("adamw: beta2 must lie in [0, 1)");
  if (!(eps > 0.0)) throw ConfigError("adamw: eps must be > 0");
}

AdamWState MakeAdamWState(const Param& p) {
  return {Matrix(p.value.rows(), p.value.cols()), Matrix(p.value.rows(), p.value.cols()),
          0};
}

void AdamWStep(std::span<Param* const> params, std::span<AdamWState> states,
               const HyperParams& h) {
  if (params.size() != states.size()) {
    throw ConfigError("adamw: states not aligned with params");
  }
  for (size_t k = 0; k < params.size(); ++k) {
    const Param& p = *params[k];
    CheckShape(p.grad.SameShape(p.value), "adamw: grad vs value of " + p.name, p.grad,
               p.value);
    CheckShape(states[k].m.SameShape(p.value) && states[k].v.SameShape(p.value),
               "adamw: state vs value of " + p.name, states[k].m, p.value);
    if (!p.grad.AllFinite()) {
      throw NumericError("adamw: non-finite gradient in parameter '" + p.name + "'");
    }
  }
  for (size_t k = 0; k < params.size(); ++k) {
    Param& p = *params[k];
    AdamWState& s = states[k];
    ++s.step;
    const double bc1 = 1.0 - std::pow(h.beta1, static_cast<double>(s.step));
    const double bc2 = 1.0 - std::pow(h.beta2, static_cast<double>(s.step));
    const double decay = h.lr * h.weight_decay;
    for (size_t i = 0; i < p.value.size(); ++i) {
      const double g = p.grad[i];
      s.m[i] = h.beta1 * s.m[i] + (1.0 - h.beta1) * g;
      s.v[i] = h.beta2 * s.v[i] + (1.0 - h.beta2) * g * g;
      const double m_hat = s.m[i] / bc1;
      const double v_hat = s.v[i] / bc2;
      double w = p.value[i];
      w -= decay * w;
      w -= h.lr * m_hat / (std::sqrt(v_hat) + h.eps);
      p.value[i] = w;
    }
  }
}

AdamW::AdamW(std::vector<Param*> params, const HyperParams& h)
    : params_(std::move(params)), hyper_(h) {
  hyper_.Validate();
  states_.reserve(params_.size());
  for (const Param* p : params_) states_.push_back(MakeAdamWState(*p));
}

void AdamW::ZeroGrad() {
  for (Param* p : params_) p->ZeroGrad();
}

}  // namespace adcue::nn
