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

#include "adcue/store/synth.h"

#include <cstdio>
#include <filesystem>
#include <vector>

#include "adcue/error.h"
#include "adcue/keywords/keywords.h"
#include "adcue/nn/rng.h"
#include "adcue/store/embedding.h"

namespace adcue::store {

namespace fs = std::filesystem;
using nn::SeededRng;

namespace {

constexpr double kAudioFramesPerSecond = 50.0;
constexpr double kSegmentHopSeconds = 7.5;

void Require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("synth spec: " + what);
}

int DrawInRange(SeededRng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.UniformInt(static_cast<uint64_t>(hi - lo + 1)));
}

std::string SpeakerId(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "S%03d", index);
  return buf;
}

std::vector<double> SpeakerOffsets(SeededRng& rng, int dims, double sigma) {
  std::vector<double> u(dims, 0.0);
  if (sigma > 0.0) {
    for (double& v : u) v = sigma * rng.Normal();
  }
  return u;
}

void FillNoise(EmbeddingTensor& t, SeededRng& rng, double sigma) {
  for (float& v : t.values()) v = static_cast<float>(sigma * rng.Normal());
}

AudioSegment MakeAudioSegment(const SynthSpec& s, SeededRng& rng, double sign,
                              const std::vector<double>& offsets, int k,
                              const std::string& rel_path, const std::string& out_dir) {
  const int frames = DrawInRange(rng, s.min_frames, s.max_frames);
  EmbeddingTensor t(s.layers, frames, s.hidden);
  FillNoise(t, rng, s.noise_sigma);
  const double shift = sign * s.class_separation * s.noise_sigma / 2.0;
  std::vector<bool> carries(frames, true);
  if (s.informative_frame_fraction < 1.0) {
    bool any = false;
    for (int f = 0; f < frames; ++f) {
      carries[f] = rng.Uniform() < s.informative_frame_fraction;
      any = any || carries[f];
    }
    if (!any) carries[0] = true;
  }
  const size_t l = s.informative_layer;
  for (int f = 0; f < frames; ++f) {
    if (!carries[f]) continue;
    for (int d = 0; d < s.informative_dims; ++d) {
      t.at(l, f, d) += static_cast<float>(shift + s.noise_sigma * offsets[d]);
    }
    if (s.salience > 0.0) {
      t.at(l, f, s.hidden - 1) += static_cast<float>(s.salience * s.noise_sigma);
    }
  }
  WriteEmbedding(t, (fs::path(out_dir) / rel_path).string());
  AudioSegment seg;
  seg.path = rel_path;
  seg.start_s = k * kSegmentHopSeconds;
  seg.duration_s = frames / kAudioFramesPerSecond;
  return seg;
}

TextSegment MakeTextSegment(const TextSynthSpec& s, SeededRng& rng, double sign,
                            const std::vector<double>& info_offsets,
                            const std::vector<double>& kw_offsets,
                            const std::string& rel_path, const std::string& out_dir) {
  const int tokens = DrawInRange(rng, s.min_tokens, s.max_tokens);
  EmbeddingTensor t(s.layers, tokens, s.hidden);
  FillNoise(t, rng, s.noise_sigma);
  const double info_shift = sign * s.class_separation * s.noise_sigma / 2.0;
  const double kw_shift = sign * s.keyword_separation * s.noise_sigma / 2.0;
  for (int f = 0; f < tokens; ++f) {
    for (int d = 0; d < s.informative_dims; ++d) {
      t.at(s.informative_layer, f, d) +=
          static_cast<float>(info_shift + s.noise_sigma * info_offsets[d]);
    }
    for (int d = 0; d < s.keyword_dims; ++d) {
      t.at(s.keyword_layer, f, s.informative_dims + d) +=
          static_cast<float>(kw_shift + s.noise_sigma * kw_offsets[d]);
    }
  }
  WriteEmbedding(t, (fs::path(out_dir) / rel_path).string());
  return {rel_path, tokens};
}

KeywordEntry MakeKeyword(const TextSynthSpec& s, const SeededRng& root,
                         const std::string& word, const std::string& category,
                         int block_start, const std::string& out_dir) {
  SeededRng rng = root.Split("keyword").Split(word);
  EmbeddingTensor t(s.layers, s.keyword_tokens, s.hidden);
  FillNoise(t, rng, s.keyword_noise);
  for (int l = 0; l < s.layers; ++l) {
    for (int f = 0; f < s.keyword_tokens; ++f) {
      for (int d = 0; d < s.keyword_dims; ++d) {
        t.at(l, f, block_start + d) += static_cast<float>(s.keyword_magnitude);
      }
    }
  }
  const std::string rel = "keywords/" + word + ".adem";
  WriteEmbedding(t, (fs::path(out_dir) / rel).string());
  return {word, category, rel};
}

}  // namespace

void SynthSpec::Validate() const {
  Require(n_train_speakers >= 1 && n_test_speakers >= 1, "speaker counts must be >= 1");
  Require(layers >= 1 && hidden >= 1, "layers and hidden must be >= 1");
  Require(min_segments >= 1 && max_segments >= min_segments, "bad segment range");
  Require(min_frames >= 1 && max_frames >= min_frames, "bad frame range");
  Require(informative_layer >= 0 && informative_layer < layers,
          "informative_layer must be < layers");
  Require(informative_dims >= 0 && informative_dims <= hidden,
          "informative_dims must be <= hidden");
  Require(noise_sigma > 0.0, "noise_sigma must be > 0");
  Require(class_separation >= 0.0 && speaker_sigma >= 0.0, "negative separation/sigma");
  Require(informative_frame_fraction > 0.0 && informative_frame_fraction <= 1.0,
          "informative_frame_fraction must lie in (0, 1]");
  Require(salience == 0.0 || informative_dims < hidden,
          "salience needs a free last hidden dim");
  if (text) {
    const TextSynthSpec& t = *text;
    Require(t.layers >= 1 && t.hidden >= 1, "text layers and hidden must be >= 1");
    Require(t.min_segments >= 1 && t.max_segments >= t.min_segments,
            "bad text segment range");
    Require(t.min_tokens >= 1 && t.max_tokens >= t.min_tokens, "bad token range");
    Require(t.informative_layer >= 0 && t.informative_layer < t.layers,
            "text informative_layer must be < layers");
    Require(t.keyword_layer >= 0 && t.keyword_layer < t.layers,
            "keyword_layer must be < text layers");
    Require(t.informative_dims >= 0 && t.keyword_dims >= 0 &&
                t.informative_dims + 2 * t.keyword_dims <= t.hidden,
            "text informative + 2 keyword blocks must fit in hidden");
    Require(t.noise_sigma > 0.0 && t.keyword_tokens >= 1, "bad text noise/tokens");
  }
}

Manifest GenerateSyntheticDataset(const SynthSpec& spec, const std::string& out_dir) {
  spec.Validate();
  const SeededRng root(spec.seed);
  Manifest m;
  m.base_dir = out_dir;
  const int total = spec.n_train_speakers + spec.n_test_speakers;
  for (int i = 0; i < total; ++i) {
    Speaker s;
    s.speaker_id = SpeakerId(i);
    const bool train = i < spec.n_train_speakers;
    const int local = train ? i : i - spec.n_train_speakers;
    s.split = train ? Split::kTrain : Split::kTest;
    s.label = local % 2 == 0 ? Label::kAD : Label::kHC;
    const double sign = s.label == Label::kAD ? 1.0 : -1.0;

    SeededRng rng = root.Split("audio").Split(s.speaker_id);
    const auto offsets = SpeakerOffsets(rng, spec.informative_dims, spec.speaker_sigma);
    const int n_seg = DrawInRange(rng, spec.min_segments, spec.max_segments);
    for (int k = 0; k < n_seg; ++k) {
      const std::string rel = "audio/" + s.speaker_id + "_" + std::to_string(k) + ".adem";
      s.audio_segments.push_back(
          MakeAudioSegment(spec, rng, sign, offsets, k, rel, out_dir));
    }
    if (spec.text) {
      const TextSynthSpec& t = *spec.text;
      SeededRng trng = root.Split("text").Split(s.speaker_id);
      const auto info = SpeakerOffsets(trng, t.informative_dims, t.speaker_sigma);
      const auto kw = SpeakerOffsets(trng, t.keyword_dims, t.speaker_sigma);
      const int n_text = DrawInRange(trng, t.min_segments, t.max_segments);
      for (int k = 0; k < n_text; ++k) {
        const std::string rel = "text/" + s.speaker_id + "_" + std::to_string(k) + ".adem";
        s.text_segments.push_back(MakeTextSegment(t, trng, sign, info, kw, rel, out_dir));
      }
    }
    m.speakers.push_back(std::move(s));
  }
  if (spec.text) {
    const TextSynthSpec& t = *spec.text;
    using keywords::Category;
    for (const auto& w : keywords::DefaultCookieTheftKeywords(Category::kNouns).words) {
      m.keywords.push_back(MakeKeyword(t, root, w, "nouns", t.informative_dims, out_dir));
    }
    for (const auto& w : keywords::DefaultCookieTheftKeywords(Category::kVerbs).words) {
      m.keywords.push_back(
          MakeKeyword(t, root, w, "verbs", t.informative_dims + t.keyword_dims, out_dir));
    }
  }
  m.metadata = {{"generator", "synthetic"},
                {"seed", spec.seed},
                {"audio_layers", spec.layers},
                {"audio_hidden", spec.hidden}};
  if (spec.text) {
    m.metadata["text_layers"] = spec.text->layers;
    m.metadata["text_hidden"] = spec.text->hidden;
  }
  SaveManifest(m, (fs::path(out_dir) / "manifest.json").string());
  return m;
}

}  // namespace adcue::store
