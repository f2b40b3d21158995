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

#include "adcue/nn/gradcheck.h"

#include <algorithm>
#include <cmath>

#include "adcue/error.h"

namespace adcue::nn {

std::vector<Matrix> FiniteDifferenceGradient(const std::function<double()>& loss,
                                             std::span<Param* const> params,
                                             double h) {
  if (!(h > 0.0)) throw ConfigError("finite difference: h must be > 0");
  std::vector<Matrix> out;
  out.reserve(params.size());
  for (Param* p : params) {
    Matrix g(p->value.rows(), p->value.cols());
    for (size_t i = 0; i < p->value.size(); ++i) {
      const double saved = p->value[i];
      p->value[i] = saved + h;
      const double up = loss();
      p->value[i] = saved - h;
      const double down = loss();
      p->value[i] = saved;
      g[i] = (up - down) / (2.0 * h);
    }
    out.push_back(std::move(g));
  }
  return out;
}

double RelativeError(double analytic, double numeric) {
  return std::abs(analytic - numeric) /
         std::max(1e-8, std::abs(analytic) + std::abs(numeric));
}

GradCheckResult CompareGradients(std::span<Param* const> params,
                                 std::span<const Matrix> numeric) {
  if (params.size() != numeric.size()) {
    throw DimensionError("gradient check: parameter count mismatch");
  }
  GradCheckResult r;
  for (size_t k = 0; k < params.size(); ++k) {
    const Param& p = *params[k];
    CheckShape(p.grad.SameShape(numeric[k]), "gradient check: " + p.name, p.grad,
               numeric[k]);
    for (size_t i = 0; i < p.grad.size(); ++i) {
      const double e = RelativeError(p.grad[i], numeric[k][i]);
      if (e > r.max_rel_error || r.worst.empty()) {
        r.max_rel_error = e;
        r.worst = p.name + "[" + std::to_string(i) + "]";
      }
    }
  }
  return r;
}

}  // namespace adcue::nn
