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


#include "adcue/cli/config.h"

#include <concepts>
#include <filesystem>
#include <set>

#include "adcue/error.h"
#include "adcue/store/binary_io.h"
#include "yaml-cpp/yaml.h"

namespace adcue::cli {

namespace fs = std::filesystem;

namespace {

// Reads the keys of one YAML map, rejecting any it was not asked about.
class MapReader {
 public:
  MapReader(const YAML::Node& node, std::string where) : node_(node), where_(std::move(where)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) {
      throw ConfigError(where_ + ": expected a mapping");
    }
  }

  // Call after all reads.
  void Finish() const {
    if (!node_ || node_.IsNull()) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!seen_.count(key)) throw ConfigError(where_ + ": unknown key '" + key + "'");
    }
  }

  // Undefined when the key is absent or explicitly null.
  YAML::Node Child(const std::string& key) {
    seen_.insert(key);
    if (!node_ || node_.IsNull()) return YAML::Node(YAML::NodeType::Undefined);
    const YAML::Node& map = node_;
    YAML::Node n = map[key];
    if (!n || n.IsNull()) return YAML::Node(YAML::NodeType::Undefined);
    return n;
  }

  void Read(const std::string& key, double& out) { Scalar(key, out); }
  void Read(const std::string& key, bool& out) { Scalar(key, out); }
  void Read(const std::string& key, std::string& out) { Scalar(key, out); }
  void Read(const std::string& key, int& out) { Scalar(key, out); }
  template <std::unsigned_integral T>
  void Read(const std::string& key, T& out) {
    long long v = 0;
    if (Scalar(key, v)) out = static_cast<T>(NonNegative(key, v));
  }
  template <typename T>
  void ReadList(const std::string& key, std::vector<T>& out) {
    const YAML::Node n = Child(key);
    if (!n) return;
    if (!n.IsSequence()) throw ConfigError(Where(key) + ": expected a list");
    std::vector<T> values;
    for (const auto& item : n) {
      long long v = 0;
      try {
        v = item.as<long long>();
      } catch (const YAML::Exception&) {
        throw ConfigError(Where(key) + ": expected integers");
      }
      values.push_back(static_cast<T>(NonNegative(key, v)));
    }
    out = std::move(values);
  }

  std::string Where(const std::string& key) const { return where_ + "." + key; }

 private:
  template <typename T>
  bool Scalar(const std::string& key, T& out) {
    const YAML::Node n = Child(key);
    if (!n) return false;
    if (!n.IsScalar()) throw ConfigError(Where(key) + ": expected a scalar");
    try {
      out = n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(Where(key) + ": cannot parse '" + n.Scalar() + "'");
    }
    return true;
  }

  unsigned long long NonNegative(const std::string& key, long long v) const {
    if (v < 0) throw ConfigError(Where(key) + ": must be >= 0");
    return static_cast<unsigned long long>(v);
  }

  YAML::Node node_;
  std::string where_;
  std::set<std::string> seen_;
};

YAML::Node ParseYaml(const std::string& text, const std::string& what) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

std::string ReadText(const std::string& path) {
  const auto bytes = store::ReadFileBytes(path);
  return std::string(bytes.begin(), bytes.end());
}

std::string ResolvePath(const std::string& p, const std::string& base_dir) {
  if (p.empty() || fs::path(p).is_absolute() || base_dir.empty()) return p;
  return (fs::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

void PipelineConfig::Validate() const {
  segment.Validate();
  augment.Validate();
  train.Validate();
  head::HeadConfig h = head;
  // Shape fields are filled from the data; check the rest with placeholders.
  h.hidden_in = 1;
  h.layers = std::max(head.layers, head.ms_layer + 1);
  h.dropout_rate = train.dropout;
  h.Validate();
}

std::string PipelineConfig::EffectiveTag() const {
  return tag.empty() ? std::string(train::ModalityName(modality)) : tag;
}

PipelineConfig ParsePipelineConfig(const std::string& yaml_text, const std::string& base_dir) {
  const YAML::Node root = ParseYaml(yaml_text, "config");
  PipelineConfig c;
  MapReader top(root, "config");
  top.Read("manifest", c.manifest);
  top.Read("out_dir", c.out_dir);
  top.Read("tag", c.tag);
  std::string modality;
  top.Read("modality", modality);
  if (!modality.empty()) {
    const auto m = train::ParseModality(modality);
    if (!m) throw ConfigError("config.modality: unknown value '" + modality + "'");
    c.modality = *m;
  }

  MapReader seg(top.Child("segment"), "config.segment");
  seg.Read("window_s", c.segment.window_s);
  seg.Read("hop_ratio", c.segment.hop_ratio);
  seg.Read("min_tail_s", c.segment.min_tail_s);
  seg.Finish();

  MapReader aug(top.Child("augment"), "config.augment");
  aug.Read("pitch_cents", c.augment.pitch_cents);
  aug.Read("speed_rate", c.augment.speed_rate);
  aug.Read("dither_amplitude", c.augment.dither_amplitude);
  aug.Finish();

  MapReader hd(top.Child("head"), "config.head");
  std::string agg, pool;
  hd.Read("aggregation", agg);
  if (agg == "ws") {
    c.head.aggregation = head::Aggregation::kWeightedSum;
  } else if (agg == "ms") {
    c.head.aggregation = head::Aggregation::kMaxSingle;
  } else if (!agg.empty()) {
    throw ConfigError("config.head.aggregation: expected ws or ms, got '" + agg + "'");
  }
  hd.Read("ms_layer", c.head.ms_layer);
  hd.ReadList("proj_dims", c.head.proj_dims);
  hd.Read("attn_dim", c.head.attn_dim);
  hd.Read("pooling", pool);
  if (pool == "attentive") {
    c.head.pooling = head::Pooling::kAttentive;
  } else if (pool == "mean") {
    c.head.pooling = head::Pooling::kMean;
  } else if (!pool.empty()) {
    throw ConfigError("config.head.pooling: expected attentive or mean, got '" + pool + "'");
  }
  hd.Finish();

  MapReader tr(top.Child("train"), "config.train");
  tr.Read("lr", c.train.lr);
  tr.Read("weight_decay", c.train.weight_decay);
  tr.Read("batch_speakers", c.train.batch_speakers);
  tr.Read("epochs", c.train.epochs);
  tr.Read("dropout", c.train.dropout);
  tr.ReadList("seeds", c.train.seeds);
  tr.Read("augmentation", c.train.augmentation);
  tr.Read("folds", c.train.folds);
  tr.Finish();
  c.head.dropout_rate = c.train.dropout;

  MapReader kw(top.Child("keywords"), "config.keywords");
  std::string category;
  kw.Read("category", category);
  if (!category.empty()) {
    const auto cat = keywords::ParseCategory(category);
    if (!cat) throw ConfigError("config.keywords.category: unknown value '" + category + "'");
    c.keywords.category = *cat;
  }
  kw.Read("layer", c.keywords.layer);
  kw.Read("file", c.keywords.file);
  kw.Finish();

  top.Finish();
  c.manifest = ResolvePath(c.manifest, base_dir);
  c.out_dir = ResolvePath(c.out_dir, base_dir);
  c.keywords.file = ResolvePath(c.keywords.file, base_dir);
  c.Validate();
  return c;
}

PipelineConfig LoadPipelineConfig(const std::string& path) {
  return ParsePipelineConfig(ReadText(path), fs::path(path).parent_path().string());
}

nlohmann::json PipelineConfigToJson(const PipelineConfig& c) {
  return {{"manifest", c.manifest},
          {"out_dir", c.out_dir},
          {"modality", train::ModalityName(c.modality)},
          {"tag", c.EffectiveTag()},
          {"segment",
           {{"window_s", c.segment.window_s},
            {"hop_ratio", c.segment.hop_ratio},
            {"min_tail_s", c.segment.min_tail_s}}},
          {"augment",
           {{"pitch_cents", c.augment.pitch_cents},
            {"speed_rate", c.augment.speed_rate},
            {"dither_amplitude", c.augment.dither_amplitude}}},
          {"head", train::HeadConfigToJson(c.head)},
          {"train", train::TrainConfigToJson(c.train)},
          {"keywords",
           {{"category", keywords::CategoryName(c.keywords.category)},
            {"layer", c.keywords.layer},
            {"file", c.keywords.file}}}};
}

store::SynthSpec ParseSynthSpec(const std::string& yaml_text) {
  const YAML::Node root = ParseYaml(yaml_text, "synth spec");
  store::SynthSpec s;
  MapReader top(root, "spec");
  top.Read("n_train_speakers", s.n_train_speakers);
  top.Read("n_test_speakers", s.n_test_speakers);
  top.Read("layers", s.layers);
  top.Read("hidden", s.hidden);
  top.Read("min_segments", s.min_segments);
  top.Read("max_segments", s.max_segments);
  top.Read("min_frames", s.min_frames);
  top.Read("max_frames", s.max_frames);
  top.Read("informative_layer", s.informative_layer);
  top.Read("informative_dims", s.informative_dims);
  top.Read("class_separation", s.class_separation);
  top.Read("noise_sigma", s.noise_sigma);
  top.Read("speaker_sigma", s.speaker_sigma);
  top.Read("informative_frame_fraction", s.informative_frame_fraction);
  top.Read("salience", s.salience);
  top.Read("seed", s.seed);
  const YAML::Node text = top.Child("text");
  if (text) {
    store::TextSynthSpec t;
    MapReader tr(text, "spec.text");
    tr.Read("layers", t.layers);
    tr.Read("hidden", t.hidden);
    tr.Read("min_segments", t.min_segments);
    tr.Read("max_segments", t.max_segments);
    tr.Read("min_tokens", t.min_tokens);
    tr.Read("max_tokens", t.max_tokens);
    tr.Read("informative_layer", t.informative_layer);
    tr.Read("informative_dims", t.informative_dims);
    tr.Read("class_separation", t.class_separation);
    tr.Read("keyword_layer", t.keyword_layer);
    tr.Read("keyword_dims", t.keyword_dims);
    tr.Read("keyword_separation", t.keyword_separation);
    tr.Read("keyword_magnitude", t.keyword_magnitude);
    tr.Read("keyword_noise", t.keyword_noise);
    tr.Read("keyword_tokens", t.keyword_tokens);
    tr.Read("noise_sigma", t.noise_sigma);
    tr.Read("speaker_sigma", t.speaker_sigma);
    tr.Finish();
    s.text = t;
  }
  top.Finish();
  s.Validate();
  return s;
}

store::SynthSpec LoadSynthSpec(const std::string& path) { return ParseSynthSpec(ReadText(path)); }

keywords::KeywordInventory LoadInventory(const std::string& keyword_file) {
  return keyword_file.empty() ? keywords::DefaultInventory()
                              : keywords::ReadKeywordFile(keyword_file);
}

train::DatasetOptions MakeDatasetOptions(const PipelineConfig& c) {
  train::DatasetOptions o;
  o.modality = c.modality;
  o.load_augmented = c.train.augmentation && c.modality == train::Modality::kAudio;
  if (c.modality == train::Modality::kCorr) {
    o.keyword_inventory = LoadInventory(c.keywords.file);
    o.keyword_category = c.keywords.category;
    o.keyword_layer = c.keywords.layer;
  } else if (c.head.aggregation == head::Aggregation::kMaxSingle) {
    o.single_layer = c.head.ms_layer;
  }
  return o;
}

}  // namespace adcue::cli
