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

#ifndef ADCUE_TRAIN_DATASET_H_
#define ADCUE_TRAIN_DATASET_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adcue/head/head.h"
#include "adcue/keywords/keywords.h"
#include "adcue/store/embedding.h"
#include "adcue/store/manifest.h"

namespace adcue::train {

enum class Modality { kAudio, kText, kCorr };

std::string_view ModalityName(Modality m);  // audio, text, corr
std::optional<Modality> ParseModality(std::string_view s);
// Fixed concatenation order for fusion: audio, text, corr.
int ModalityRank(std::string_view name);

inline constexpr double kAudioFramesPerSecond = 50.0;

struct DatasetOptions {
  Modality modality = Modality::kAudio;
  // Load only this layer of every tensor (single-layer aggregation).
  std::optional<size_t> single_layer;
  // Also load augmented views listed in the manifest (audio only).
  bool load_augmented = false;
  // Correlation modality: keyword source and selection.
  keywords::KeywordInventory keyword_inventory = keywords::DefaultInventory();
  keywords::Category keyword_category = keywords::Category::kNouns;
  size_t keyword_layer = 0;
};

struct SpeakerData {
  std::string speaker_id;
  store::Label label = store::Label::kHC;
  store::Split split = store::Split::kTrain;
  std::vector<store::EmbeddingTensor> segments;
  std::vector<std::vector<store::EmbeddingTensor>> augmented;  // per segment
  std::vector<double> starts;
  std::vector<size_t> valid_frames;
};

// In-memory embeddings of one modality for every speaker of a manifest.
class Dataset {
 public:
  static Dataset Load(const store::Manifest& m, const DatasetOptions& opts);

  Modality modality() const { return modality_; }
  size_t layers() const { return layers_; }  // layers in the files
  size_t hidden() const { return hidden_; }
  bool layer_preselected() const { return preselected_; }
  // Subsets share the loaded tensors; only these pointers are copied.
  const std::vector<const SpeakerData*>& speakers() const { return speakers_; }

  std::vector<size_t> IndicesOf(store::Split split) const;
  // Restricted copy holding only speakers of `split`.
  Dataset Subset(store::Split split) const;
  // Copy holding the speakers at `indices`, in that order.
  Dataset Select(std::span<const size_t> indices) const;

  // Head inputs for one speaker; `views`, when given, picks per segment
  // an augmented view (index into SpeakerData::augmented) or -1 for the
  // original.
  std::vector<head::SegmentInput> Inputs(const SpeakerData& s,
                                         const std::vector<int>* views = nullptr) const;

  // Head config matching this dataset's shape (hidden_in, layers). Correlation
  // data is one 1 x 1 x H segment and gets a single projector layer.
  head::HeadConfig Adapt(head::HeadConfig cfg) const;

  // Test hook: build from already-loaded speakers.
  static Dataset FromSpeakers(Modality modality, size_t layers, size_t hidden,
                              std::vector<SpeakerData> speakers,
                              bool layer_preselected = false, size_t selected_layer = 0);

 private:
  Modality modality_ = Modality::kAudio;
  size_t layers_ = 0;
  size_t hidden_ = 0;
  bool preselected_ = false;
  size_t selected_layer_ = 0;
  std::shared_ptr<const std::vector<SpeakerData>> pool_;
  std::vector<const SpeakerData*> speakers_;

  Dataset ShapeOnlyCopy() const;
  void Adopt(std::vector<SpeakerData> speakers);
};

// Train-split-only view. Layer selection consumes this type, so it cannot
// see test speakers or their labels.
class TrainSplit {
 public:
  explicit TrainSplit(const Dataset& full) : data_(full.Subset(store::Split::kTrain)) {}
  const Dataset& data() const { return data_; }

 private:
  Dataset data_;
};

}  // namespace adcue::train

#endif  // ADCUE_TRAIN_DATASET_H_
