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

#include "adcue/train/dataset.h"

#include <algorithm>
#include <cmath>

#include "adcue/error.h"

namespace adcue::train {

std::string_view ModalityName(Modality m) {
  switch (m) {
    case Modality::kAudio:
      return "audio";
    case Modality::kText:
      return "text";
    case Modality::kCorr:
      return "corr";
  }
  return "audio";
}

std::optional<Modality> ParseModality(std::string_view s) {
  for (Modality m : {Modality::kAudio, Modality::kText, Modality::kCorr}) {
    if (s == ModalityName(m)) return m;
  }
  return std::nullopt;
}

int ModalityRank(std::string_view name) {
  if (name == "audio") return 0;
  if (name == "text") return 1;
  if (name == "corr") return 2;
  return 3;
}

namespace {

class ShapeTracker {
 public:
  void See(size_t layers, size_t hidden, const std::string& origin) {
    if (layers_ == 0) {
      layers_ = layers;
      hidden_ = hidden;
    } else if (layers != layers_ || hidden != hidden_) {
      throw DimensionError(origin + ": shape L=" + std::to_string(layers) +
                           ", H=" + std::to_string(hidden) + " differs from L=" +
                           std::to_string(layers_) + ", H=" + std::to_string(hidden_));
    }
  }
  size_t layers() const { return layers_; }
  size_t hidden() const { return hidden_; }

 private:
  size_t layers_ = 0;
  size_t hidden_ = 0;
};

store::EmbeddingTensor LoadTensor(const std::string& path, const DatasetOptions& opts,
                                  ShapeTracker& shapes) {
  if (opts.single_layer) {
    const store::EmbeddingShape s = store::ReadEmbeddingShape(path);
    shapes.See(s.layers, s.hidden, path);
    return store::ReadEmbeddingLayer(path, *opts.single_layer);
  }
  store::EmbeddingTensor t = store::ReadEmbedding(path);
  shapes.See(t.layers(), t.hidden(), path);
  return t;
}

size_t AudioValidFrames(double duration_s, size_t frames) {
  const auto n = static_cast<long long>(std::llround(duration_s * kAudioFramesPerSecond));
  return static_cast<size_t>(std::clamp<long long>(n, 1, static_cast<long long>(frames)));
}

}  // namespace

Dataset Dataset::Load(const store::Manifest& m, const DatasetOptions& opts) {
  Dataset d;
  d.modality_ = opts.modality;
  ShapeTracker shapes;

  std::vector<double> z_k;
  if (opts.modality == Modality::kCorr) {
    const auto list = opts.keyword_inventory.Select(opts.keyword_category);
    const auto tensors = keywords::LoadKeywordTensors(m, list);
    size_t hidden = 0;
    for (const auto& s : m.speakers) {
      if (!s.text_segments.empty()) {
        hidden = store::ReadEmbeddingShape(m.Resolve(s.text_segments.front().path)).hidden;
        break;
      }
    }
    if (hidden == 0) throw DataError("manifest has no text embeddings");
    z_k = keywords::KeywordEmbedding(tensors, opts.keyword_layer, hidden);
  }

  std::vector<SpeakerData> loaded;
  for (const store::Speaker& sp : m.speakers) {
    SpeakerData s;
    s.speaker_id = sp.speaker_id;
    s.label = sp.label;
    s.split = sp.split;
    switch (opts.modality) {
      case Modality::kAudio:
        if (sp.audio_segments.empty()) {
          throw DataError("speaker '" + sp.speaker_id + "' has no audio segments");
        }
        for (const auto& a : sp.audio_segments) {
          s.segments.push_back(LoadTensor(m.Resolve(a.path), opts, shapes));
          s.starts.push_back(a.start_s);
          s.valid_frames.push_back(AudioValidFrames(a.duration_s, s.segments.back().frames()));
          std::vector<store::EmbeddingTensor> views;
          if (opts.load_augmented) {
            for (const auto& p : a.augmented_paths) {
              views.push_back(LoadTensor(m.Resolve(p), opts, shapes));
            }
          }
          s.augmented.push_back(std::move(views));
        }
        break;
      case Modality::kText: {
        if (sp.text_segments.empty()) {
          throw DataError("speaker '" + sp.speaker_id + "' has no text segments");
        }
        double start = 0.0;
        for (const auto& t : sp.text_segments) {
          s.segments.push_back(LoadTensor(m.Resolve(t.path), opts, shapes));
          s.starts.push_back(start);
          start += 1.0;
          s.valid_frames.push_back(s.segments.back().frames());
          s.augmented.emplace_back();
        }
        break;
      }
      case Modality::kCorr:
        s.segments.push_back(
            keywords::CorrelationFeatureTensor(m, sp, z_k, opts.keyword_layer));
        shapes.See(1, z_k.size(), "speaker '" + sp.speaker_id + "'");
        s.starts.push_back(0.0);
        s.valid_frames.push_back(1);
        s.augmented.emplace_back();
        break;
    }
    loaded.push_back(std::move(s));
  }
  d.layers_ = shapes.layers();
  d.hidden_ = shapes.hidden();
  d.preselected_ = opts.single_layer.has_value() && opts.modality != Modality::kCorr;
  if (d.preselected_) d.selected_layer_ = *opts.single_layer;
  d.Adopt(std::move(loaded));
  return d;
}

void Dataset::Adopt(std::vector<SpeakerData> speakers) {
  pool_ = std::make_shared<const std::vector<SpeakerData>>(std::move(speakers));
  speakers_.clear();
  for (const auto& s : *pool_) speakers_.push_back(&s);
}

Dataset Dataset::ShapeOnlyCopy() const {
  Dataset d;
  d.modality_ = modality_;
  d.layers_ = layers_;
  d.hidden_ = hidden_;
  d.preselected_ = preselected_;
  d.selected_layer_ = selected_layer_;
  d.pool_ = pool_;
  return d;
}

std::vector<size_t> Dataset::IndicesOf(store::Split split) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < speakers_.size(); ++i) {
    if (speakers_[i]->split == split) out.push_back(i);
  }
  return out;
}

Dataset Dataset::Subset(store::Split split) const { return Select(IndicesOf(split)); }

Dataset Dataset::Select(std::span<const size_t> indices) const {
  Dataset d = ShapeOnlyCopy();
  for (size_t i : indices) {
    if (i >= speakers_.size()) throw DimensionError("dataset: speaker index out of range");
    d.speakers_.push_back(speakers_[i]);
  }
  return d;
}

std::vector<head::SegmentInput> Dataset::Inputs(const SpeakerData& s,
                                                const std::vector<int>* views) const {
  std::vector<head::SegmentInput> out;
  out.reserve(s.segments.size());
  for (size_t k = 0; k < s.segments.size(); ++k) {
    const int v = views ? (*views)[k] : -1;
    const store::EmbeddingTensor* t = v < 0 ? &s.segments[k] : &s.augmented[k][v];
    out.push_back({t, std::min(s.valid_frames[k], t->frames()), s.starts[k], preselected_});
  }
  return out;
}

head::HeadConfig Dataset::Adapt(head::HeadConfig cfg) const {
  cfg.hidden_in = hidden_;
  cfg.layers = layers_;
  if (modality_ == Modality::kCorr) {
    cfg.aggregation = head::Aggregation::kMaxSingle;
    cfg.ms_layer = 0;
    // The correlation vector gets one projector layer of the feature width.
    cfg.proj_dims = {cfg.feature_dim()};
  } else if (preselected_) {
    cfg.aggregation = head::Aggregation::kMaxSingle;
    cfg.ms_layer = selected_layer_;
  }
  return cfg;
}

Dataset Dataset::FromSpeakers(Modality modality, size_t layers, size_t hidden,
                              std::vector<SpeakerData> speakers, bool layer_preselected,
                              size_t selected_layer) {
  Dataset d;
  d.modality_ = modality;
  d.layers_ = layers;
  d.hidden_ = hidden;
  d.preselected_ = layer_preselected;
  d.selected_layer_ = selected_layer;
  for (auto& s : speakers) {
    s.augmented.resize(s.segments.size());
    for (size_t k = s.valid_frames.size(); k < s.segments.size(); ++k) {
      s.valid_frames.push_back(s.segments[k].frames());
    }
    for (size_t k = s.starts.size(); k < s.segments.size(); ++k) {
      s.starts.push_back(static_cast<double>(k));
    }
  }
  d.Adopt(std::move(speakers));
  return d;
}

}  // namespace adcue::train
