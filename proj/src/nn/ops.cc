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

#include "adcue/nn/ops.h"

#include <algorithm>
#include <cmath>

#include "adcue/error.h"

namespace adcue::nn {

Matrix LinearForward(const Matrix& x, const Param& w, const Param& b) {
  CheckShape(x.cols() == w.value.rows(), "linear: x cols vs w rows", x, w.value);
  CheckShape(b.value.rows() == 1 && b.value.cols() == w.value.cols(),
             "linear: bias vs w cols", b.value, w.value);
  const size_t din = w.value.rows(), dout = w.value.cols();
  Matrix out(x.rows(), dout);
  for (size_t t = 0; t < x.rows(); ++t) {
    auto o = out.row(t);
    std::copy(b.value.values().begin(), b.value.values().end(), o.begin());
    const auto xr = x.row(t);
    for (size_t i = 0; i < din; ++i) {
      const double xi = xr[i];
      if (xi == 0.0) continue;
      const auto wr = w.value.row(i);
      for (size_t j = 0; j < dout; ++j) o[j] += xi * wr[j];
    }
  }
  return out;
}

Matrix LinearBackward(const Matrix& x, Param& w, Param& b, const Matrix& grad_out,
                      bool want_grad_x) {
  CheckShape(grad_out.rows() == x.rows() && grad_out.cols() == w.value.cols(),
             "linear backward: grad_out vs x", grad_out, x);
  CheckShape(x.cols() == w.value.rows(), "linear backward: x cols vs w rows", x,
             w.value);
  const size_t din = w.value.rows(), dout = w.value.cols();
  for (size_t t = 0; t < x.rows(); ++t) {
    const auto g = grad_out.row(t);
    const auto xr = x.row(t);
    for (size_t i = 0; i < din; ++i) {
      const double xi = xr[i];
      if (xi == 0.0) continue;
      auto gw = w.grad.row(i);
      for (size_t j = 0; j < dout; ++j) gw[j] += xi * g[j];
    }
    auto gb = b.grad.row(0);
    for (size_t j = 0; j < dout; ++j) gb[j] += g[j];
  }
  if (!want_grad_x) return {};
  Matrix grad_x(x.rows(), din);
  for (size_t t = 0; t < x.rows(); ++t) {
    const auto g = grad_out.row(t);
    auto gx = grad_x.row(t);
    for (size_t i = 0; i < din; ++i) {
      const auto wr = w.value.row(i);
      double acc = 0.0;
      for (size_t j = 0; j < dout; ++j) acc += wr[j] * g[j];
      gx[i] = acc;
    }
  }
  return grad_x;
}

Matrix LayerNormForward(const Matrix& x, const Param& gamma, const Param& beta,
                        double eps, LayerNormCache* cache) {
  CheckShape(gamma.value.rows() == 1 && gamma.value.cols() == x.cols(),
             "layer norm: gamma vs x", gamma.value, x);
  CheckShape(beta.value.SameShape(gamma.value), "layer norm: beta vs gamma",
             beta.value, gamma.value);
  if (eps <= 0.0) throw ConfigError("layer norm: eps must be positive");
  const size_t d = x.cols();
  Matrix out(x.rows(), d);
  if (cache) {
    cache->normalized = Matrix(x.rows(), d);
    cache->inv_std.assign(x.rows(), 0.0);
  }
  const auto g = gamma.value.row(0);
  const auto be = beta.value.row(0);
  for (size_t t = 0; t < x.rows(); ++t) {
    const auto xr = x.row(t);
    double mean = 0.0;
    for (double v : xr) mean += v;
    mean /= static_cast<double>(d);
    double var = 0.0;
    for (double v : xr) var += (v - mean) * (v - mean);
    var /= static_cast<double>(d);
    const double inv_std = 1.0 / std::sqrt(var + eps);
    auto o = out.row(t);
    for (size_t j = 0; j < d; ++j) {
      const double xh = (xr[j] - mean) * inv_std;
      if (cache) cache->normalized(t, j) = xh;
      o[j] = xh * g[j] + be[j];
    }
    if (cache) cache->inv_std[t] = inv_std;
  }
  return out;
}

Matrix LayerNormBackward(const LayerNormCache& cache, Param& gamma, Param& beta,
                         const Matrix& grad_out) {
  const Matrix& xh = cache.normalized;
  CheckShape(grad_out.SameShape(xh), "layer norm backward: grad_out vs cache",
             grad_out, xh);
  const size_t d = xh.cols();
  const double inv_d = 1.0 / static_cast<double>(d);
  const auto g = gamma.value.row(0);
  auto gg = gamma.grad.row(0);
  auto gb = beta.grad.row(0);
  Matrix grad_x(xh.rows(), d);
  std::vector<double> dxh(d);
  for (size_t t = 0; t < xh.rows(); ++t) {
    const auto go = grad_out.row(t);
    const auto xr = xh.row(t);
    double sum_dxh = 0.0, sum_dxh_xh = 0.0;
    for (size_t j = 0; j < d; ++j) {
      gg[j] += go[j] * xr[j];
      gb[j] += go[j];
      dxh[j] = go[j] * g[j];
      sum_dxh += dxh[j];
      sum_dxh_xh += dxh[j] * xr[j];
    }
    auto gx = grad_x.row(t);
    const double s = cache.inv_std[t];
    for (size_t j = 0; j < d; ++j) {
      gx[j] = s * (dxh[j] - inv_d * sum_dxh - xr[j] * inv_d * sum_dxh_xh);
    }
  }
  return grad_x;
}

std::vector<double> Softmax(std::span<const double> logits) {
  if (logits.empty()) throw DimensionError("softmax: empty input");
  const double mx = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double sum = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - mx);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

std::vector<double> SoftmaxBackward(std::span<const double> probs,
                                    std::span<const double> grad_probs) {
  if (probs.size() != grad_probs.size()) {
    throw DimensionError("softmax backward: size mismatch");
  }
  double dot = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) dot += probs[i] * grad_probs[i];
  std::vector<double> gz(probs.size());
  for (size_t i = 0; i < probs.size(); ++i) gz[i] = probs[i] * (grad_probs[i] - dot);
  return gz;
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Matrix Dropout(const Matrix& x, double rate, SeededRng& rng, bool training,
               Matrix* mask) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw ConfigError("dropout: rate must lie in [0, 1), got " + std::to_string(rate));
  }
  if (!training || rate == 0.0) {
    if (mask) *mask = Matrix(x.rows(), x.cols(), 1.0);
    return x;
  }
  const double scale = 1.0 / (1.0 - rate);
  Matrix out(x.rows(), x.cols());
  Matrix m(x.rows(), x.cols());
  for (size_t i = 0; i < x.size(); ++i) {
    m[i] = rng.Uniform() < rate ? 0.0 : scale;
    out[i] = x[i] * m[i];
  }
  if (mask) *mask = std::move(m);
  return out;
}

BceResult BceWithLogits(double logit, int label) {
  if (label != 0 && label != 1) throw ConfigError("bce: label must be 0 or 1");
  // softplus(z) = max(z, 0) + log1p(exp(-|z|))
  const double softplus = std::max(logit, 0.0) + std::log1p(std::exp(-std::abs(logit)));
  return {softplus - label * logit, Sigmoid(logit) - label};
}

void InitUniformFanIn(Param& p, SeededRng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(p.value.rows()));
  for (double& v : p.value.values()) v = rng.Uniform(-bound, bound);
  p.ZeroGrad();
}

}  // namespace adcue::nn
