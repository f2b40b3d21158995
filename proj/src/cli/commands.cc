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


#include "adcue/cli/commands.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "adcue/audio/wav_io.h"
#include "adcue/error.h"
#include "adcue/head/checkpoint.h"
#include "adcue/store/binary_io.h"
#include "adcue/store/manifest.h"
#include "adcue/train/ablation.h"
#include "adcue/train/fusion.h"
#include "adcue/train/sweep.h"
#include "spdlog/spdlog.h"

namespace adcue::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void WriteText(const std::string& path, const std::string& text) {
  store::WriteFileBytes(path, std::span<const char>(text.data(), text.size()));
}

struct LabelRow {
  store::Label label;
  store::Split split;
};

std::map<std::string, LabelRow> ReadLabels(const std::string& path) {
  const auto bytes = store::ReadFileBytes(path);
  std::istringstream in(std::string(bytes.begin(), bytes.end()));
  std::map<std::string, LabelRow> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (line_no == 1 && !f.empty() && f[0] == "speaker_id") continue;
    const std::string where = path + " line " + std::to_string(line_no);
    if (f.size() != 3) throw DataError(where + ": expected speaker_id,label,split");
    const auto label = store::ParseLabel(f[1]);
    const auto split = store::ParseSplit(f[2]);
    if (!label) throw DataError(where + ": unknown label '" + f[1] + "'");
    if (!split) throw DataError(where + ": unknown split '" + f[2] + "'");
    if (!rows.emplace(f[0], LabelRow{*label, *split}).second) {
      throw DataError(where + ": duplicate speaker id '" + f[0] + "'");
    }
  }
  return rows;
}

std::string SeedFile(const std::string& dir, const char* prefix, uint64_t seed,
                     const char* ext) {
  return (fs::path(dir) / (prefix + std::to_string(seed) + ext)).string();
}

double CategoryCode(keywords::Category c) { return static_cast<double>(static_cast<int>(c)); }

// Drops test speakers so layer selection never sees their labels.
store::Manifest TrainOnly(store::Manifest m) {
  std::erase_if(m.speakers, [](const store::Speaker& s) { return s.split != store::Split::kTrain; });
  return m;
}

size_t LayerCount(const store::Manifest& m, train::Modality modality) {
  for (const auto& s : m.speakers) {
    if (modality == train::Modality::kAudio && !s.audio_segments.empty()) {
      return store::ReadEmbeddingShape(m.Resolve(s.audio_segments.front().path)).layers;
    }
    if (modality == train::Modality::kText && !s.text_segments.empty()) {
      return store::ReadEmbeddingShape(m.Resolve(s.text_segments.front().path)).layers;
    }
  }
  throw DataError("manifest has no " + std::string(train::ModalityName(modality)) +
                  " embeddings");
}

}  // namespace

void RunSegment(const SegmentArgs& a, std::ostream& out) {
  a.spec.Validate();
  if (a.labels.empty()) throw ConfigError("segment: --labels is required");
  if (!fs::is_directory(a.input_dir)) throw DataError("not a directory: " + a.input_dir);
  const auto labels = ReadLabels(a.labels);

  std::vector<fs::path> wavs;
  for (const auto& e : fs::directory_iterator(a.input_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".wav") wavs.push_back(e.path());
  }
  std::sort(wavs.begin(), wavs.end());
  if (wavs.empty()) throw DataError("no .wav files in " + a.input_dir);

  store::Manifest m;
  size_t total = 0;
  for (const auto& p : wavs) {
    const std::string id = p.stem().string();
    auto it = labels.find(id);
    if (it == labels.end()) throw DataError("no label row for speaker '" + id + "'");
    store::Speaker s;
    s.speaker_id = id;
    s.label = it->second.label;
    s.split = it->second.split;
    const auto chunks = audio::Segment(audio::Normalize(audio::ReadWav(p.string())), a.spec);
    for (size_t k = 0; k < chunks.size(); ++k) {
      const std::string stem = id + "_" + std::to_string(k);
      store::AudioSegment seg;
      seg.path = "audio/" + stem + ".adem";
      seg.wav_path = "wav/" + stem + ".wav";
      seg.start_s = chunks[k].start_s;
      seg.duration_s = chunks[k].duration_s;
      audio::WriteWav(chunks[k].wave, (fs::path(a.out_dir) / seg.wav_path).string());
      s.audio_segments.push_back(std::move(seg));
    }
    total += chunks.size();
    m.speakers.push_back(std::move(s));
  }
  m.metadata["segment"] = {{"window_s", a.spec.window_s},
                           {"hop_ratio", a.spec.hop_ratio},
                           {"min_tail_s", a.spec.min_tail_s}};
  const std::string path = (fs::path(a.out_dir) / "manifest.json").string();
  store::SaveManifest(m, path);
  out << json{{"manifest", path}, {"speakers", m.speakers.size()}, {"segments", total}}.dump(2)
      << "\n";
}

void RunAugment(const AugmentArgs& a, std::ostream& out) {
  a.config.Validate();
  if (a.views == 0) throw ConfigError("augment: --views must be >= 1");
  store::Manifest m = store::LoadManifest(a.manifest, /*check_files=*/false);
  size_t written = 0;
  for (auto& s : m.speakers) {
    for (size_t k = 0; k < s.audio_segments.size(); ++k) {
      auto& seg = s.audio_segments[k];
      if (seg.wav_path.empty()) {
        throw DataError("speaker '" + s.speaker_id + "' segment " + std::to_string(k) +
                        " has no wav_path");
      }
      const audio::Waveform w = audio::ReadWav(m.Resolve(seg.wav_path));
      seg.augmented_wav_paths.clear();
      for (size_t v = 0; v < a.views; ++v) {
        nn::SeededRng rng = audio::AugmentStream(a.seed, s.speaker_id, k, v);
        const std::string rel = "augmented/" + s.speaker_id + "_" + std::to_string(k) + "_v" +
                                std::to_string(v) + ".wav";
        audio::WriteWav(audio::Augment(w, a.config, rng), m.Resolve(rel));
        seg.augmented_wav_paths.push_back(rel);
        ++written;
      }
    }
  }
  m.metadata["augment"] = {{"seed", a.seed},
                           {"views", a.views},
                           {"pitch_cents", a.config.pitch_cents},
                           {"speed_rate", a.config.speed_rate},
                           {"dither_amplitude", a.config.dither_amplitude}};
  store::SaveManifest(m, a.manifest);
  out << json{{"manifest", a.manifest}, {"augmented_files", written}}.dump(2) << "\n";
}

void RunSynth(const SynthArgs& a, std::ostream& out) {
  store::SynthSpec spec = LoadSynthSpec(a.spec);
  if (a.seed) spec.seed = *a.seed;
  const store::Manifest m = store::GenerateSyntheticDataset(spec, a.out_dir);
  out << json{{"manifest", (fs::path(a.out_dir) / "manifest.json").string()},
              {"speakers", m.speakers.size()}}
             .dump(2)
      << "\n";
}

void RunTrain(const PipelineConfig& c, std::ostream& out) {
  c.Validate();
  if (c.manifest.empty()) throw ConfigError("train: no manifest given");
  const store::Manifest m = store::LoadManifest(c.manifest);
  const train::DatasetOptions opts = MakeDatasetOptions(c);
  const train::Dataset data = train::Dataset::Load(m, opts);
  const std::string tag = c.EffectiveTag();
  const std::string dir = (fs::path(c.out_dir) / tag).string();

  auto save = [&](uint64_t seed, const train::TrainResult& r) {
    head::Checkpoint ckpt{r.config, r.params, {}};
    ckpt.attributes["modality"] = train::ModalityRank(train::ModalityName(c.modality));
    ckpt.attributes["keyword_category"] = CategoryCode(c.keywords.category);
    ckpt.attributes["keyword_layer"] = static_cast<double>(c.keywords.layer);
    ckpt.attributes["seed"] = static_cast<double>(seed);
    head::SaveCheckpoint(ckpt, SeedFile(dir, "seed", seed, ".adhp"));
    train::SaveFeatureTable(train::ExportFeatures(data, r.config, r.params),
                            SeedFile(dir, "features_seed", seed, ".json"));
  };
  train::RunReport report = train::MultiRun(data, c.head, c.train, tag, save);
  json pipeline = PipelineConfigToJson(c);
  pipeline.erase("out_dir");
  report.config["pipeline"] = pipeline;
  const std::string text = train::RunReportToJson(report).dump(2) + "\n";
  WriteText((fs::path(dir) / "report.json").string(), text);
  out << text;
}

void RunEval(const EvalArgs& a, std::ostream& out) {
  const auto split = store::ParseSplit(a.split);
  if (!split) throw ConfigError("eval: unknown split '" + a.split + "'");
  const head::Checkpoint ckpt = head::LoadCheckpoint(a.checkpoint);
  const store::Manifest m = store::LoadManifest(a.manifest);

  auto attr = [&](const std::string& key, double fallback) {
    auto it = ckpt.attributes.find(key);
    return it == ckpt.attributes.end() ? fallback : it->second;
  };
  train::DatasetOptions opts;
  switch (static_cast<int>(attr("modality", 0))) {
    case 0:
      opts.modality = train::Modality::kAudio;
      break;
    case 1:
      opts.modality = train::Modality::kText;
      break;
    case 2:
      opts.modality = train::Modality::kCorr;
      break;
    default:
      throw DataError(a.checkpoint + ": unknown modality attribute");
  }
  if (opts.modality == train::Modality::kCorr) {
    const int cat = static_cast<int>(attr("keyword_category", 1));
    if (cat < 0 || cat > 3) throw DataError(a.checkpoint + ": bad keyword_category attribute");
    opts.keyword_category = static_cast<keywords::Category>(cat);
    opts.keyword_layer = static_cast<size_t>(attr("keyword_layer", 0));
    opts.keyword_inventory = LoadInventory(a.keywords);
  } else if (ckpt.config.aggregation == head::Aggregation::kMaxSingle) {
    opts.single_layer = ckpt.config.ms_layer;
  }
  const train::Dataset data = train::Dataset::Load(m, opts);
  const train::Metrics metrics = train::Evaluate(data, ckpt.config, ckpt.params, *split);
  out << train::MetricsToJson(metrics).dump(2) << "\n";
}

void RunSweep(const PipelineConfig& c, const SweepArgs& a, std::ostream& out) {
  c.Validate();
  if (c.modality == train::Modality::kCorr) {
    throw ConfigError("sweep: modality must be audio or text");
  }
  if (c.manifest.empty()) throw ConfigError("sweep: no manifest given");
  const store::Manifest m = TrainOnly(store::LoadManifest(c.manifest));
  const size_t layers = LayerCount(m, c.modality);
  train::DatasetOptions opts = MakeDatasetOptions(c);
  const train::LayerLoader load = [&](size_t l) {
    opts.single_layer = l;
    return train::TrainSplit(train::Dataset::Load(m, opts));
  };
  const uint64_t seed = a.seed.value_or(c.train.seeds.front());
  const train::SweepResult r = train::LayerSweep(load, layers, c.head, c.train, seed);
  const std::string csv =
      a.csv.empty() ? (fs::path(c.out_dir) / c.EffectiveTag() / "sweep.csv").string() : a.csv;
  WriteText(csv, train::SweepCsv(r));
  json curve = json::array();
  for (const auto& p : r.curve) curve.push_back({{"layer", p.layer}, {"mean", p.mean}, {"std", p.std}});
  out << json{{"best_layer", r.best_layer},
              {"folds", r.folds},
              {"seed", seed},
              {"csv", csv},
              {"curve", curve}}
             .dump(2)
      << "\n";
}

void RunCombine(const CombineArgs& a, std::ostream& out) {
  if (a.features.empty()) throw ConfigError("combine: no --features given");
  std::vector<train::FeatureTable> tables;
  for (const auto& f : a.features) tables.push_back(train::LoadFeatureTable(f));
  const train::FeatureTable fused = train::CombineFeatures(std::move(tables));
  const train::RunReport report = train::FusionMultiRun(fused, a.train);
  const std::string text = train::RunReportToJson(report).dump(2) + "\n";
  if (!a.report.empty()) WriteText(a.report, text);
  out << text;
}

void RunAblate(const PipelineConfig& c, const std::string& csv, std::ostream& out) {
  c.Validate();
  if (c.modality == train::Modality::kCorr) {
    throw ConfigError("ablate: modality must be audio or text");
  }
  if (c.manifest.empty()) throw ConfigError("ablate: no manifest given");
  const store::Manifest m = store::LoadManifest(c.manifest);
  train::DatasetOptions opts = MakeDatasetOptions(c);
  opts.single_layer.reset();
  const train::Dataset data = train::Dataset::Load(m, opts);
  const std::string table = train::AblationCsv(train::PoolingAblation(data, c.head, c.train));
  const std::string path =
      csv.empty() ? (fs::path(c.out_dir) / c.EffectiveTag() / "ablation.csv").string() : csv;
  WriteText(path, table);
  out << table;
}

}  // namespace adcue::cli
