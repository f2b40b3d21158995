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

// Trainable feature extractor and classifier on top of layer-stacked
// encoder embeddings:
//
//   segment [L x T x H]
//     -> layer aggregation (softmax-weighted sum, or one selected layer)
//     -> projector: (linear -> layer norm) per entry of proj_dims
//     -> dropout (training only)
//     -> attentive temporal pooling
//   speaker: mean over segments -> linear classifier -> logit (class 1 = AD)

#ifndef ADCUE_HEAD_HEAD_H_
#define ADCUE_HEAD_HEAD_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adcue/nn/matrix.h"
#include "adcue/nn/ops.h"
#include "adcue/nn/rng.h"
#include "adcue/store/embedding.h"

namespace adcue::head {

enum class Aggregation { kWeightedSum, kMaxSingle };
// kMean is attentive pooling with its parameters frozen at zero.
enum class Pooling { kAttentive, kMean };

std::string_view AggregationName(Aggregation a);
std::string_view PoolingName(Pooling p);

struct HeadConfig {
  size_t hidden_in = 768;
  size_t layers = 13;
  Aggregation aggregation = Aggregation::kMaxSingle;
  size_t ms_layer = 0;
  std::vector<size_t> proj_dims = {8, 8};
  double dropout_rate = 0.25;
  size_t attn_dim = 8;
  Pooling pooling = Pooling::kAttentive;

  void Validate() const;
  size_t feature_dim() const { return proj_dims.back(); }
};

struct ProjectorLayer {
  nn::Param weight;    // Din x Dout
  nn::Param bias;      // 1 x Dout
  nn::Param ln_gamma;  // 1 x Dout
  nn::Param ln_beta;   // 1 x Dout
};

struct HeadParams {
  nn::Param layer_logits;  // 1 x L; empty unless weighted-sum aggregation
  std::vector<ProjectorLayer> projector;
  nn::Param attn_w;  // d x attn_dim
  nn::Param attn_v;  // attn_dim x 1
  nn::Param cls_w;   // d x 1
  nn::Param cls_b;   // 1 x 1

  // Linear weights ~ U(+-1/sqrt(fan_in)), biases 0, gamma 1, beta 0, layer
  // logits 0. Attention starts at zero when pooling is kMean.
  static HeadParams Init(const HeadConfig& cfg, nn::SeededRng& rng);

  std::vector<nn::Param*> All();
  std::vector<const nn::Param*> All() const;
  // Parameters the optimizer updates (attention excluded under kMean).
  std::vector<nn::Param*> Trainable(const HeadConfig& cfg);
  void ZeroGrad();
  // Throws DimensionError unless every tensor matches `cfg`.
  void CheckShapes(const HeadConfig& cfg) const;
};

// One segment of a speaker. When `layer_preselected` is set the tensor
// holds only the configured single layer (see ReadEmbeddingLayer).
struct SegmentInput {
  const store::EmbeddingTensor* tensor = nullptr;
  size_t valid_frames = 0;  // frames beyond this are padding; 0 means all
  double start_s = 0.0;
  bool layer_preselected = false;

  size_t frames() const;
};

struct SpeakerFeature {
  std::vector<double> vector;
  std::string speaker_id;
  std::string modality;
};

// ---- stage operations -------------------------------------------------

// sum_l softmax(logits)[l] * e[l] over the first `frames` frames.
nn::Matrix AggregateLayersWS(const store::EmbeddingTensor& e,
                             std::span<const double> layer_logits, size_t frames);
// Layer `layer` verbatim over the first `frames` frames.
nn::Matrix AggregateLayersMS(const store::EmbeddingTensor& e, size_t layer, size_t frames);

struct ProjectorCache {
  std::vector<nn::Matrix> inputs;  // input to each linear
  std::vector<nn::LayerNormCache> norms;
};

nn::Matrix Project(const nn::Matrix& x, const HeadParams& p,
                   ProjectorCache* cache = nullptr);
// Returns grad w.r.t. the projector input (empty unless want_grad_x).
nn::Matrix ProjectBackward(const ProjectorCache& cache, HeadParams& p,
                           const nn::Matrix& grad_out, bool want_grad_x);

struct AttentionCache {
  nn::Matrix input;            // T x d
  nn::Matrix hidden;           // T x attn_dim, tanh(x W)
  std::vector<double> alpha;   // T
};

// s_t = v^T tanh(W^T x_t), alpha = softmax(s), out = sum_t alpha_t x_t.
std::vector<double> AttentivePool(const nn::Matrix& x, const nn::Param& attn_w,
                                  const nn::Param& attn_v, AttentionCache* cache = nullptr);
// Accumulates into attn_w/attn_v grads, returns grad w.r.t. x.
nn::Matrix AttentivePoolBackward(const AttentionCache& cache, nn::Param& attn_w,
                                 nn::Param& attn_v, std::span<const double> grad_out);

// Arithmetic mean of per-segment vectors, summed in ascending `starts`
// order so the result does not depend on list order.
std::vector<double> SpeakerAverage(std::span<const std::vector<double>> pooled,
                                   std::span<const double> starts);

// logit = f^T w + b.
double Classify(std::span<const double> feature, const nn::Param& cls_w,
                const nn::Param& cls_b);
// Probability >= 0.5 (logit >= 0) is an AD decision.
inline bool DecideAD(double logit) { return logit >= 0.0; }

// ---- whole-speaker pass -----------------------------------------------

struct SegmentCache {
  SegmentInput input;
  nn::Matrix aggregated;
  ProjectorCache projector;
  nn::Matrix dropout_mask;
  AttentionCache attention;
};

struct SpeakerCache {
  std::vector<SegmentCache> segments;  // in ascending start order
  std::vector<double> layer_weights;   // softmax(layer_logits), WS only
  std::vector<double> feature;
  double logit = 0.0;
};

// Runs every stage for one speaker. Dropout draws from `rng` in ascending
// segment-start order. Throws DimensionError when segments disagree on
// (L, H) or do not match the config.
double ForwardSpeaker(std::span<const SegmentInput> segments, const HeadConfig& cfg,
                      const HeadParams& params, nn::SeededRng& rng, bool training,
                      SpeakerCache* cache = nullptr);

// Exact reverse of ForwardSpeaker; accumulates into params' grads.
void BackwardSpeaker(const SpeakerCache& cache, const HeadConfig& cfg, HeadParams& params,
                     double dlogit);

// Evaluation-mode speaker feature (input of the classifier).
std::vector<double> SpeakerFeatureVector(std::span<const SegmentInput> segments,
                                         const HeadConfig& cfg, const HeadParams& params);

}  // namespace adcue::head

#endif  // ADCUE_HEAD_HEAD_H_
