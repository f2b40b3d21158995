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


#include "adcue/cli/app.h"

#include <cstdlib>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "adcue/cli/commands.h"
#include "adcue/cli/config.h"
#include "adcue/error.h"
#include "json.hpp"
#include "spdlog/sinks/stdout_sinks.h"
#include "spdlog/spdlog.h"

namespace adcue::cli {

namespace {

void SetUpLogging() {
  auto logger = spdlog::get("adcue");
  if (!logger) logger = spdlog::stderr_logger_mt("adcue");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* level = std::getenv("ADCUE_LOG");
  spdlog::set_level(level ? spdlog::level::from_str(level) : spdlog::level::info);
}

// Flags that override values of a --config file.
struct Overrides {
  std::string config;
  std::optional<std::string> manifest, out_dir, modality, tag;
  std::optional<uint64_t> seed;
  std::optional<double> lr;
  std::optional<size_t> epochs;
  std::optional<std::string> aggregation, pooling;
  std::optional<size_t> ms_layer;
  bool augmentation = false;
  std::optional<std::string> keyword_category, keywords;
  std::optional<size_t> keyword_layer;

  void Register(CLI::App* cmd, bool with_seed) {
    const train::TrainConfig t;
    const head::HeadConfig h;
    cmd->add_option("--config", config, "YAML pipeline config")->check(CLI::ExistingFile);
    cmd->add_option("--manifest", manifest, "Dataset manifest (JSON)");
    cmd->add_option("--out-dir", out_dir, "Output directory")->default_str("runs");
    cmd->add_option("--modality", modality, "audio, text or corr")->default_str("audio");
    cmd->add_option("--tag", tag, "Run tag (output subdirectory)")->default_str("<modality>");
    if (with_seed) {
      cmd->add_option("--seed", seed, "Train this seed only")->default_str("0 1 2 3 4");
    }
    cmd->add_option("--lr", lr, "AdamW learning rate")->default_str(fmt::format("{}", t.lr));
    cmd->add_option("--epochs", epochs, "Training epochs")->default_str(std::to_string(t.epochs));
    cmd->add_option("--aggregation", aggregation, "Layer aggregation: ws or ms")
        ->default_str("ms");
    cmd->add_option("--ms-layer", ms_layer, "Layer used by ms aggregation")
        ->default_str(std::to_string(h.ms_layer));
    cmd->add_option("--pooling", pooling, "attentive or mean")->default_str("attentive");
    cmd->add_flag("--augmentation", augmentation, "Train on augmented views");
    cmd->add_option("--keyword-category", keyword_category, "none, nouns, verbs or nouns+verbs")
        ->default_str("nouns");
    cmd->add_option("--keyword-layer", keyword_layer, "Text layer for keyword correlation")
        ->default_str("0");
    cmd->add_option("--keywords", keywords, "Keyword file ([nouns]/[verbs] sections)");
  }

  PipelineConfig Apply() const {
    PipelineConfig c = config.empty() ? PipelineConfig{} : LoadPipelineConfig(config);
    if (manifest) c.manifest = *manifest;
    if (out_dir) c.out_dir = *out_dir;
    if (tag) c.tag = *tag;
    if (modality) {
      const auto m = train::ParseModality(*modality);
      if (!m) throw ConfigError("unknown modality '" + *modality + "'");
      c.modality = *m;
    }
    if (seed) c.train.seeds = {*seed};
    if (lr) c.train.lr = *lr;
    if (epochs) c.train.epochs = *epochs;
    if (aggregation) {
      if (*aggregation == "ws") {
        c.head.aggregation = head::Aggregation::kWeightedSum;
      } else if (*aggregation == "ms") {
        c.head.aggregation = head::Aggregation::kMaxSingle;
      } else {
        throw ConfigError("unknown aggregation '" + *aggregation + "'");
      }
    }
    if (ms_layer) c.head.ms_layer = *ms_layer;
    if (pooling) {
      if (*pooling == "attentive") {
        c.head.pooling = head::Pooling::kAttentive;
      } else if (*pooling == "mean") {
        c.head.pooling = head::Pooling::kMean;
      } else {
        throw ConfigError("unknown pooling '" + *pooling + "'");
      }
    }
    if (augmentation) c.train.augmentation = true;
    if (keyword_category) {
      const auto cat = keywords::ParseCategory(*keyword_category);
      if (!cat) throw ConfigError("unknown keyword category '" + *keyword_category + "'");
      c.keywords.category = *cat;
    }
    if (keyword_layer) c.keywords.layer = *keyword_layer;
    if (keywords) c.keywords.file = *keywords;
    c.Validate();
    return c;
  }
};

void WriteError(std::ostream& err, const std::string& kind, const std::string& message) {
  err << nlohmann::json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  SetUpLogging();
  CLI::App app{"Alzheimer's-detection heads over pretrained encoder embeddings", "adcue"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  SegmentArgs seg;
  auto* cmd_segment = app.add_subcommand("segment", "Normalize and slice WAVs into windows");
  cmd_segment->add_option("--input-dir", seg.input_dir, "Directory of <speaker_id>.wav")
      ->required();
  cmd_segment->add_option("--out-dir", seg.out_dir, "Output directory")->required();
  cmd_segment->add_option("--labels", seg.labels, "CSV rows speaker_id,label,split")->required();
  cmd_segment->add_option("--window", seg.spec.window_s, "Window length (s)");
  cmd_segment->add_option("--hop-ratio", seg.spec.hop_ratio, "Hop as a fraction of the window");
  cmd_segment->add_option("--min-tail", seg.spec.min_tail_s, "Shortest tail kept (s)");

  AugmentArgs aug;
  auto* cmd_augment = app.add_subcommand("augment", "Write seeded augmented WAV views");
  cmd_augment->add_option("--manifest", aug.manifest, "Manifest with wav_path entries")
      ->required();
  cmd_augment->add_option("--seed", aug.seed, "Augmentation seed");
  cmd_augment->add_option("--views", aug.views, "Augmented views per segment");
  cmd_augment->add_option("--pitch-cents", aug.config.pitch_cents, "Pitch range +- (cents)");
  cmd_augment->add_option("--speed-rate", aug.config.speed_rate, "Speed range +- (rate)");
  cmd_augment->add_option("--dither", aug.config.dither_amplitude, "Dither peak amplitude");

  SynthArgs syn;
  auto* cmd_synth = app.add_subcommand("synth", "Generate a planted-signal embedding dataset");
  cmd_synth->add_option("--spec", syn.spec, "YAML synthetic spec")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_synth->add_option("--out-dir", syn.out_dir, "Output directory")->required();
  cmd_synth->add_option("--seed", syn.seed, "Override the spec seed");

  Overrides train_ovr;
  auto* cmd_train = app.add_subcommand("train", "Train one head per seed and evaluate on test");
  train_ovr.Register(cmd_train, true);

  EvalArgs ev;
  auto* cmd_eval = app.add_subcommand("eval", "Evaluate a checkpoint on one split");
  cmd_eval->add_option("--checkpoint", ev.checkpoint, "Checkpoint (.adhp)")->required();
  cmd_eval->add_option("--manifest", ev.manifest, "Dataset manifest")->required();
  cmd_eval->add_option("--split", ev.split, "train or test");
  cmd_eval->add_option("--keywords", ev.keywords, "Keyword file used in training (corr)");

  Overrides sweep_ovr;
  SweepArgs sw;
  auto* cmd_sweep = app.add_subcommand("sweep", "Cross-validate every layer on the train split");
  sweep_ovr.Register(cmd_sweep, false);
  cmd_sweep->add_option("--seed", sw.seed, "Fold and init seed")->default_str("first seed");
  cmd_sweep->add_option("--csv", sw.csv, "Curve output")->default_str("<out-dir>/<tag>/sweep.csv");

  CombineArgs comb;
  comb.train.lr = 1e-3;
  std::string comb_config;
  std::optional<double> comb_lr;
  std::optional<size_t> comb_epochs;
  std::vector<uint64_t> comb_seeds;
  auto* cmd_combine = app.add_subcommand("combine", "Fuse exported features, train a classifier");
  cmd_combine->add_option("--features", comb.features, "Feature tables (JSON), any order")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_combine->add_option("--train-config", comb_config, "YAML config; its train section is used")
      ->check(CLI::ExistingFile);
  cmd_combine->add_option("--lr", comb_lr, "Learning rate")->default_str("1e-3");
  cmd_combine->add_option("--epochs", comb_epochs, "Epochs")->default_str("50");
  cmd_combine->add_option("--seeds", comb_seeds, "Seeds")->default_str("0 1 2 3 4");
  cmd_combine->add_option("--report", comb.report, "Write the report here too");

  Overrides ablate_ovr;
  std::string ablate_csv;
  auto* cmd_ablate = app.add_subcommand("ablate", "Pooling and aggregation ablation table");
  ablate_ovr.Register(cmd_ablate, true);
  cmd_ablate->add_option("--csv", ablate_csv, "Table output")
      ->default_str("<out-dir>/<tag>/ablation.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    WriteError(err, "config", e.what());
    return kExitConfig;
  }

  try {
    if (cmd_segment->parsed()) {
      RunSegment(seg, out);
    } else if (cmd_augment->parsed()) {
      RunAugment(aug, out);
    } else if (cmd_synth->parsed()) {
      RunSynth(syn, out);
    } else if (cmd_train->parsed()) {
      RunTrain(train_ovr.Apply(), out);
    } else if (cmd_eval->parsed()) {
      RunEval(ev, out);
    } else if (cmd_sweep->parsed()) {
      RunSweep(sweep_ovr.Apply(), sw, out);
    } else if (cmd_combine->parsed()) {
      if (!comb_config.empty()) comb.train = LoadPipelineConfig(comb_config).train;
      if (comb_lr) comb.train.lr = *comb_lr;
      if (comb_epochs) comb.train.epochs = *comb_epochs;
      if (!comb_seeds.empty()) comb.train.seeds = comb_seeds;
      RunCombine(comb, out);
    } else if (cmd_ablate->parsed()) {
      RunAblate(ablate_ovr.Apply(), ablate_csv, out);
    }
  } catch (const ConfigError& e) {
    WriteError(err, e.kind(), e.what());
    return kExitConfig;
  } catch (const DataError& e) {
    WriteError(err, e.kind(), e.what());
    return kExitData;
  } catch (const NumericError& e) {
    WriteError(err, e.kind(), e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    WriteError(err, "internal", e.what());
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace adcue::cli
