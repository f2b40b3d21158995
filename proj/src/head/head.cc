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

#include "adcue/head/head.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "adcue/error.h"

namespace adcue::head {

using nn::Matrix;
using nn::Param;

std::string_view AggregationName(Aggregation a) {
  return a == Aggregation::kWeightedSum ? "ws" : "ms";
}

std::string_view PoolingName(Pooling p) {
  return p == Pooling::kAttentive ? "attentive" : "mean";
}

void HeadConfig::Validate() const {
  if (hidden_in == 0 || layers == 0) throw ConfigError("head: hidden_in and layers must be >= 1");
  if (aggregation == Aggregation::kMaxSingle && ms_layer >= layers) {
    throw ConfigError("head: ms_layer " + std::to_string(ms_layer) +
                      " out of range for " + std::to_string(layers) + " layers");
  }
  if (proj_dims.empty()) throw ConfigError("head: proj_dims must be nonempty");
  for (size_t d : proj_dims) {
    if (d == 0) throw ConfigError("head: projector dims must be >= 1");
  }
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw ConfigError("head: dropout_rate must lie in [0, 1)");
  }
  if (attn_dim == 0) throw ConfigError("head: attn_dim must be >= 1");
}

HeadParams HeadParams::Init(const HeadConfig& cfg, nn::SeededRng& rng) {
  cfg.Validate();
  HeadParams p;
  if (cfg.aggregation == Aggregation::kWeightedSum) {
    p.layer_logits = Param("layer_logits", 1, cfg.layers);
  }
  size_t din = cfg.hidden_in;
  for (size_t i = 0; i < cfg.proj_dims.size(); ++i) {
    const size_t dout = cfg.proj_dims[i];
    const std::string prefix = "proj" + std::to_string(i) + ".";
    ProjectorLayer layer{Param(prefix + "weight", din, dout), Param(prefix + "bias", 1, dout),
                         Param(prefix + "ln_gamma", 1, dout),
                         Param(prefix + "ln_beta", 1, dout)};
    nn::InitUniformFanIn(layer.weight, rng);
    layer.ln_gamma.value.Fill(1.0);
    p.projector.push_back(std::move(layer));
    din = dout;
  }
  const size_t d = cfg.feature_dim();
  p.attn_w = Param("attn.w", d, cfg.attn_dim);
  p.attn_v = Param("attn.v", cfg.attn_dim, 1);
  if (cfg.pooling == Pooling::kAttentive) {
    nn::InitUniformFanIn(p.attn_w, rng);
    nn::InitUniformFanIn(p.attn_v, rng);
  }
  p.cls_w = Param("cls.w", d, 1);
  p.cls_b = Param("cls.b", 1, 1);
  nn::InitUniformFanIn(p.cls_w, rng);
  return p;
}

std::vector<Param*> HeadParams::All() {
  std::vector<Param*> out;
  if (!layer_logits.value.empty()) out.push_back(&layer_logits);
  for (auto& l : projector) {
    out.insert(out.end(), {&l.weight, &l.bias, &l.ln_gamma, &l.ln_beta});
  }
  out.insert(out.end(), {&attn_w, &attn_v, &cls_w, &cls_b});
  return out;
}

std::vector<const Param*> HeadParams::All() const {
  std::vector<const Param*> out;
  for (Param* p : const_cast<HeadParams*>(this)->All()) out.push_back(p);
  return out;
}

std::vector<Param*> HeadParams::Trainable(const HeadConfig& cfg) {
  std::vector<Param*> out;
  for (Param* p : All()) {
    if (cfg.pooling == Pooling::kMean && (p == &attn_w || p == &attn_v)) continue;
    out.push_back(p);
  }
  return out;
}

void HeadParams::ZeroGrad() {
  for (Param* p : All()) p->ZeroGrad();
}

void HeadParams::CheckShapes(const HeadConfig& cfg) const {
  auto expect = [](const Param& p, size_t r, size_t c, const std::string& what) {
    if (p.value.rows() != r || p.value.cols() != c || !p.grad.SameShape(p.value)) {
      throw DimensionError("head params: " + what + " has shape " + p.value.ShapeString() +
                           ", expected " + std::to_string(r) + "x" + std::to_string(c));
    }
  };
  if (cfg.aggregation == Aggregation::kWeightedSum) {
    expect(layer_logits, 1, cfg.layers, "layer_logits");
  }
  if (projector.size() != cfg.proj_dims.size()) {
    throw DimensionError("head params: projector depth does not match config");
  }
  size_t din = cfg.hidden_in;
  for (size_t i = 0; i < projector.size(); ++i) {
    const size_t dout = cfg.proj_dims[i];
    expect(projector[i].weight, din, dout, "projector weight");
    expect(projector[i].bias, 1, dout, "projector bias");
    expect(projector[i].ln_gamma, 1, dout, "projector ln_gamma");
    expect(projector[i].ln_beta, 1, dout, "projector ln_beta");
    din = dout;
  }
  expect(attn_w, din, cfg.attn_dim, "attn.w");
  expect(attn_v, cfg.attn_dim, 1, "attn.v");
  expect(cls_w, din, 1, "cls.w");
  expect(cls_b, 1, 1, "cls.b");
}

size_t SegmentInput::frames() const {
  const size_t t = tensor->frames();
  return valid_frames == 0 ? t : std::min(valid_frames, t);
}

Matrix AggregateLayersWS(const store::EmbeddingTensor& e, std::span<const double> layer_logits,
                         size_t frames) {
  if (layer_logits.size() != e.layers()) {
    throw DimensionError("weighted sum: " + std::to_string(layer_logits.size()) +
                         " logits for " + std::to_string(e.layers()) + " layers");
  }
  if (frames == 0 || frames > e.frames()) throw DimensionError("weighted sum: bad frame count");
  const std::vector<double> w = nn::Softmax(layer_logits);
  Matrix out(frames, e.hidden());
  for (size_t l = 0; l < e.layers(); ++l) {
    const auto slab = e.layer(l);
    for (size_t i = 0; i < out.size(); ++i) out[i] += w[l] * slab[i];
  }
  return out;
}

Matrix AggregateLayersMS(const store::EmbeddingTensor& e, size_t layer, size_t frames) {
  if (layer >= e.layers()) {
    throw ConfigError("single layer: index " + std::to_string(layer) + " out of range (L=" +
                      std::to_string(e.layers()) + ")");
  }
  if (frames == 0 || frames > e.frames()) throw DimensionError("single layer: bad frame count");
  Matrix out(frames, e.hidden());
  const auto slab = e.layer(layer);
  std::copy(slab.begin(), slab.begin() + out.size(), out.values().begin());
  return out;
}

Matrix Project(const Matrix& x, const HeadParams& p, ProjectorCache* cache) {
  if (cache) {
    cache->inputs.clear();
    cache->norms.assign(p.projector.size(), {});
  }
  Matrix cur = x;
  for (size_t i = 0; i < p.projector.size(); ++i) {
    const ProjectorLayer& l = p.projector[i];
    Matrix lin = nn::LinearForward(cur, l.weight, l.bias);
    if (cache) cache->inputs.push_back(std::move(cur));
    cur = nn::LayerNormForward(lin, l.ln_gamma, l.ln_beta, nn::kLayerNormEps,
                               cache ? &cache->norms[i] : nullptr);
  }
  return cur;
}

Matrix ProjectBackward(const ProjectorCache& cache, HeadParams& p, const Matrix& grad_out,
                       bool want_grad_x) {
  Matrix g = grad_out;
  for (size_t i = p.projector.size(); i-- > 0;) {
    ProjectorLayer& l = p.projector[i];
    Matrix g_lin = nn::LayerNormBackward(cache.norms[i], l.ln_gamma, l.ln_beta, g);
    g = nn::LinearBackward(cache.inputs[i], l.weight, l.bias, g_lin, i > 0 || want_grad_x);
  }
  return g;
}

std::vector<double> AttentivePool(const Matrix& x, const Param& attn_w, const Param& attn_v,
                                  AttentionCache* cache) {
  if (x.rows() == 0) throw DimensionError("attentive pool: no frames");
  nn::CheckShape(attn_w.value.rows() == x.cols(), "attentive pool: W rows vs x cols",
                 attn_w.value, x);
  nn::CheckShape(attn_v.value.rows() == attn_w.value.cols() && attn_v.value.cols() == 1,
                 "attentive pool: v vs W", attn_v.value, attn_w.value);
  const size_t T = x.rows(), d = x.cols(), A = attn_w.value.cols();
  Matrix hidden(T, A);
  std::vector<double> scores(T, 0.0);
  for (size_t t = 0; t < T; ++t) {
    const auto xr = x.row(t);
    auto hr = hidden.row(t);
    for (size_t j = 0; j < d; ++j) {
      const auto wr = attn_w.value.row(j);
      for (size_t a = 0; a < A; ++a) hr[a] += xr[j] * wr[a];
    }
    double s = 0.0;
    for (size_t a = 0; a < A; ++a) {
      hr[a] = std::tanh(hr[a]);
      s += attn_v.value(a, 0) * hr[a];
    }
    scores[t] = s;
  }
  std::vector<double> alpha = nn::Softmax(scores);
  std::vector<double> out(d, 0.0);
  for (size_t t = 0; t < T; ++t) {
    const auto xr = x.row(t);
    for (size_t j = 0; j < d; ++j) out[j] += alpha[t] * xr[j];
  }
  if (cache) {
    cache->input = x;
    cache->hidden = std::move(hidden);
    cache->alpha = std::move(alpha);
  }
  return out;
}

Matrix AttentivePoolBackward(const AttentionCache& cache, Param& attn_w, Param& attn_v,
                             std::span<const double> grad_out) {
  const Matrix& x = cache.input;
  const size_t T = x.rows(), d = x.cols(), A = attn_w.value.cols();
  if (grad_out.size() != d) throw DimensionError("attentive pool backward: grad size");
  Matrix grad_x(T, d);
  std::vector<double> d_alpha(T, 0.0);
  for (size_t t = 0; t < T; ++t) {
    const auto xr = x.row(t);
    auto gx = grad_x.row(t);
    double acc = 0.0;
    for (size_t j = 0; j < d; ++j) {
      gx[j] = cache.alpha[t] * grad_out[j];
      acc += grad_out[j] * xr[j];
    }
    d_alpha[t] = acc;
  }
  const std::vector<double> d_score = nn::SoftmaxBackward(cache.alpha, d_alpha);
  std::vector<double> dz(A);
  for (size_t t = 0; t < T; ++t) {
    const auto hr = cache.hidden.row(t);
    for (size_t a = 0; a < A; ++a) {
      attn_v.grad(a, 0) += d_score[t] * hr[a];
      dz[a] = d_score[t] * attn_v.value(a, 0) * (1.0 - hr[a] * hr[a]);
    }
    const auto xr = x.row(t);
    auto gx = grad_x.row(t);
    for (size_t j = 0; j < d; ++j) {
      auto gw = attn_w.grad.row(j);
      const auto wr = attn_w.value.row(j);
      double acc = 0.0;
      for (size_t a = 0; a < A; ++a) {
        gw[a] += xr[j] * dz[a];
        acc += wr[a] * dz[a];
      }
      gx[j] += acc;
    }
  }
  return grad_x;
}

namespace {

std::vector<size_t> StartOrder(std::span<const double> starts) {
  std::vector<size_t> order(starts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return starts[a] < starts[b]; });
  return order;
}

}  // namespace

std::vector<double> SpeakerAverage(std::span<const std::vector<double>> pooled,
                                   std::span<const double> starts) {
  if (pooled.empty()) throw DataError("speaker average: no segments");
  if (starts.size() != pooled.size()) throw DimensionError("speaker average: starts size");
  const size_t d = pooled.front().size();
  std::vector<double> out(d, 0.0);
  for (size_t i : StartOrder(starts)) {
    if (pooled[i].size() != d) throw DimensionError("speaker average: ragged vectors");
    for (size_t j = 0; j < d; ++j) out[j] += pooled[i][j];
  }
  const double n = static_cast<double>(pooled.size());
  for (double& v : out) v /= n;
  return out;
}

double Classify(std::span<const double> feature, const Param& cls_w, const Param& cls_b) {
  if (cls_w.value.rows() != feature.size() || cls_w.value.cols() != 1) {
    throw DimensionError("classify: feature dim " + std::to_string(feature.size()) +
                         " vs weight " + cls_w.value.ShapeString());
  }
  double logit = cls_b.value[0];
  for (size_t j = 0; j < feature.size(); ++j) logit += feature[j] * cls_w.value[j];
  return logit;
}

namespace {

void CheckSegments(std::span<const SegmentInput> segments, const HeadConfig& cfg) {
  if (segments.empty()) throw DataError("speaker has no segments");
  for (const SegmentInput& s : segments) {
    if (s.tensor == nullptr) throw DataError("segment without tensor");
    const size_t want_layers = s.layer_preselected ? 1 : cfg.layers;
    if (s.tensor->layers() != want_layers || s.tensor->hidden() != cfg.hidden_in) {
      throw DimensionError("segment tensor is " + std::to_string(s.tensor->layers()) + "x" +
                           std::to_string(s.tensor->frames()) + "x" +
                           std::to_string(s.tensor->hidden()) + ", head expects L=" +
                           std::to_string(want_layers) +
                           ", H=" + std::to_string(cfg.hidden_in));
    }
    if (s.layer_preselected && cfg.aggregation == Aggregation::kWeightedSum) {
      throw ConfigError("weighted-sum aggregation needs all layers");
    }
  }
}

}  // namespace

double ForwardSpeaker(std::span<const SegmentInput> segments, const HeadConfig& cfg,
                      const HeadParams& params, nn::SeededRng& rng, bool training,
                      SpeakerCache* cache) {
  CheckSegments(segments, cfg);
  std::vector<double> starts;
  for (const SegmentInput& s : segments) starts.push_back(s.start_s);
  const std::vector<size_t> order = StartOrder(starts);

  const bool ws = cfg.aggregation == Aggregation::kWeightedSum;
  if (cache) {
    cache->segments.assign(segments.size(), {});
    cache->layer_weights = ws ? nn::Softmax(params.layer_logits.value.row(0))
                              : std::vector<double>{};
  }
  std::vector<double> sum(cfg.feature_dim(), 0.0);
  for (size_t k = 0; k < order.size(); ++k) {
    const SegmentInput& in = segments[order[k]];
    SegmentCache* sc = cache ? &cache->segments[k] : nullptr;
    const size_t frames = in.frames();
    Matrix agg = ws ? AggregateLayersWS(*in.tensor, params.layer_logits.value.row(0), frames)
                    : AggregateLayersMS(*in.tensor, in.layer_preselected ? 0 : cfg.ms_layer,
                                        frames);
    Matrix projected = Project(agg, params, sc ? &sc->projector : nullptr);
    Matrix dropped = nn::Dropout(projected, cfg.dropout_rate, rng, training,
                                 sc ? &sc->dropout_mask : nullptr);
    const std::vector<double> pooled =
        AttentivePool(dropped, params.attn_w, params.attn_v, sc ? &sc->attention : nullptr);
    for (size_t j = 0; j < sum.size(); ++j) sum[j] += pooled[j];
    if (sc) {
      sc->input = in;
      if (ws) sc->aggregated = std::move(agg);
    }
  }
  const double n = static_cast<double>(segments.size());
  for (double& v : sum) v /= n;
  const double logit = Classify(sum, params.cls_w, params.cls_b);
  if (cache) {
    cache->feature = std::move(sum);
    cache->logit = logit;
  }
  return logit;
}

void BackwardSpeaker(const SpeakerCache& cache, const HeadConfig& cfg, HeadParams& params,
                     double dlogit) {
  if (cache.segments.empty()) throw DataError("backward: missing forward cache");
  const size_t d = cfg.feature_dim();
  if (cache.feature.size() != d) throw DimensionError("backward: cached feature size");
  for (size_t j = 0; j < d; ++j) params.cls_w.grad[j] += cache.feature[j] * dlogit;
  params.cls_b.grad[0] += dlogit;

  const double inv_n = 1.0 / static_cast<double>(cache.segments.size());
  std::vector<double> d_pooled(d);
  for (size_t j = 0; j < d; ++j) d_pooled[j] = params.cls_w.value[j] * dlogit * inv_n;

  const bool ws = cfg.aggregation == Aggregation::kWeightedSum;
  std::vector<double> d_weights(ws ? cfg.layers : 0, 0.0);
  for (const SegmentCache& sc : cache.segments) {
    Matrix g = AttentivePoolBackward(sc.attention, params.attn_w, params.attn_v, d_pooled);
    for (size_t i = 0; i < g.size(); ++i) g[i] *= sc.dropout_mask[i];
    Matrix g_agg = ProjectBackward(sc.projector, params, g, ws);
    if (!ws) continue;
    const store::EmbeddingTensor& e = *sc.input.tensor;
    for (size_t l = 0; l < cfg.layers; ++l) {
      const auto slab = e.layer(l);
      double acc = 0.0;
      for (size_t i = 0; i < g_agg.size(); ++i) acc += g_agg[i] * slab[i];
      d_weights[l] += acc;
    }
  }
  if (ws) {
    const std::vector<double> d_logits = nn::SoftmaxBackward(cache.layer_weights, d_weights);
    for (size_t l = 0; l < cfg.layers; ++l) params.layer_logits.grad[l] += d_logits[l];
  }
}

std::vector<double> SpeakerFeatureVector(std::span<const SegmentInput> segments,
                                         const HeadConfig& cfg, const HeadParams& params) {
  nn::SeededRng unused(0);
  SpeakerCache cache;
  ForwardSpeaker(segments, cfg, params, unused, /*training=*/false, &cache);
  return cache.feature;
}

}  // namespace adcue::head
