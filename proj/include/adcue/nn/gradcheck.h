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

#ifndef ADCUE_NN_GRADCHECK_H_
#define ADCUE_NN_GRADCHECK_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "adcue/nn/matrix.h"

namespace adcue::nn {

// Central-difference estimate of d loss / d p for every scalar of every
// parameter. Each parameter value is restored after probing.
std::vector<Matrix> FiniteDifferenceGradient(const std::function<double()>& loss,
                                             std::span<Param* const> params,
                                             double h = 1e-3);

// |a - n| / max(1e-8, |a| + |n|)
double RelativeError(double analytic, double numeric);

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst;  // "<param>[index]"
};

// Compares each Param::grad with its numeric counterpart.
GradCheckResult CompareGradients(std::span<Param* const> params,
                                 std::span<const Matrix> numeric);

}  // namespace adcue::nn

#endif  // ADCUE_NN_GRADCHECK_H_
