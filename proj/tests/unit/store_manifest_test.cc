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


#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "adcue/store/binary_io.h"
#include "adcue/store/embedding.h"
#include "adcue/store/manifest.h"
#include "adcue/store/synth.h"
#include "test_util.h"

namespace adcue::store {
namespace {

using nlohmann::json;

json Spk(const std::string& id, const std::string& label, const std::string& split) {
  return {{"speaker_id", id},
          {"label", label},
          {"split", split},
          {"audio_segments", json::array({{{"path", "a/" + id + ".adem"},
                                           {"start_s", 0.0},
                                           {"duration_s", 30.0}}})}};
}

bool HasError(const ManifestValidation& v, const std::string& needle) {
  return std::any_of(v.errors.begin(), v.errors.end(),
                     [&](const std::string& e) { return e.find(needle) != std::string::npos; });
}

TEST(ManifestTest, AcceptsValidDocument) {
  const json doc = {{"version", 1},
                    {"speakers", {Spk("s1", "AD", "train"), Spk("s2", "HC", "test")}}};
  const auto v = ValidateManifestJson(doc, "/base", false);
  ASSERT_TRUE(v.ok());
  EXPECT_EQ(v.manifest->speakers.size(), 2u);
  EXPECT_EQ(v.manifest->speakers[0].label, Label::kAD);
  EXPECT_EQ(v.manifest->SpeakersIn(Split::kTest).size(), 1u);
  EXPECT_EQ(v.manifest->Resolve("a/x.adem"), "/base/a/x.adem");
}

TEST(ManifestTest, CollectsEveryViolation) {
  const json doc = {{"version", 1},
                    {"speakers",
                     {Spk("s1", "AD", "train"), Spk("s1", "HC", "train"),
                      Spk("s3", "MCI", "train"), Spk("s4", "HC", "dev")}}};
  const auto v = ValidateManifestJson(doc, ".", false);
  EXPECT_FALSE(v.ok());
  EXPECT_FALSE(v.manifest.has_value());
  EXPECT_TRUE(HasError(v, "duplicate speaker id 's1'"));
  EXPECT_TRUE(HasError(v, "unknown label 'MCI'"));
  EXPECT_TRUE(HasError(v, "unknown split 'dev'"));
  EXPECT_TRUE(HasError(v, "empty split 'test'"));
  EXPECT_GE(v.errors.size(), 4u);
}

TEST(ManifestTest, RejectsMissingFieldsAndBadDurations) {
  json bad = Spk("s1", "AD", "train");
  bad.erase("label");
  bad["audio_segments"][0]["duration_s"] = 0.0;
  const json doc = {{"version", 1}, {"speakers", {bad, Spk("s2", "HC", "test")}}};
  const auto v = ValidateManifestJson(doc, ".", false);
  EXPECT_TRUE(HasError(v, "missing field 'label'"));
  EXPECT_TRUE(HasError(v, "duration_s must be > 0"));
}

TEST(ManifestTest, RejectsUnsupportedVersionAndShape) {
  EXPECT_TRUE(HasError(ValidateManifestJson(json::array(), ".", false), "object"));
  const json doc = {{"version", 2},
                    {"speakers", {Spk("s1", "AD", "train"), Spk("s2", "HC", "test")}}};
  EXPECT_TRUE(HasError(ValidateManifestJson(doc, ".", false), "unsupported version 2"));
}

TEST(ManifestTest, ChecksReferencedFiles) {
  testing::TempDir dir;
  std::filesystem::create_directories(dir / "a");
  WriteEmbedding(EmbeddingTensor(1, 1, 1), dir / "a/s1.adem");
  const json doc = {{"version", 1},
                    {"speakers", {Spk("s1", "AD", "train"), Spk("s2", "HC", "test")}}};
  const auto v = ValidateManifestJson(doc, dir.str(), true);
  EXPECT_FALSE(v.ok());
  EXPECT_TRUE(HasError(v, "missing file 'a/s2.adem'"));
  EXPECT_FALSE(HasError(v, "s1.adem"));
}

TEST(ManifestTest, LoadThrowsListingAllErrors) {
  testing::TempDir dir;
  const std::string text = R"({"version": 1, "speakers": [
      {"speaker_id": "x", "label": "??", "split": "train"}]})";
  WriteFileBytes(dir / "m.json", std::span<const char>(text.data(), text.size()));
  try {
    LoadManifest(dir / "m.json", false);
    FAIL();
  } catch (const DataError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("unknown label"), std::string::npos);
    EXPECT_NE(what.find("empty split 'test'"), std::string::npos);
  }
  WriteFileBytes(dir / "bad.json", std::span<const char>("{", 1));
  EXPECT_THROW(LoadManifest(dir / "bad.json"), DataError);
}

TEST(ManifestTest, SaveLoadRoundTrip) {
  testing::TempDir dir;
  Manifest m;
  Speaker a{.speaker_id = "a", .label = Label::kAD, .split = Split::kTrain};
  a.audio_segments.push_back({.path = "x.adem", .start_s = 7.5, .duration_s = 30.0,
                              .wav_path = "x.wav", .augmented_paths = {"y.adem"},
                              .augmented_wav_paths = {"y.wav"}});
  a.text_segments.push_back({.path = "t.adem", .token_count = 12});
  a.transcript_path = "a.txt";
  Speaker b{.speaker_id = "b", .label = Label::kHC, .split = Split::kTest};
  m.speakers = {a, b};
  m.keywords.push_back({"cookie", "nouns", "k.adem"});
  m.metadata = {{"note", "x"}};
  SaveManifest(m, dir / "m.json");
  const Manifest back = LoadManifest(dir / "m.json", false);
  EXPECT_EQ(ManifestToJson(back), ManifestToJson(m));
  EXPECT_EQ(back.base_dir, dir.str());
}

TEST(LabelSplitTest, NamesRoundTrip) {
  for (Label l : {Label::kAD, Label::kHC}) EXPECT_EQ(ParseLabel(LabelName(l)), l);
  for (Split s : {Split::kTrain, Split::kTest}) EXPECT_EQ(ParseSplit(SplitName(s)), s);
  EXPECT_FALSE(ParseLabel("ad ").has_value());
}

SynthSpec SmallSpec() {
  SynthSpec s;
  s.n_train_speakers = 6;
  s.n_test_speakers = 4;
  s.layers = 3;
  s.hidden = 8;
  s.informative_layer = 1;
  s.informative_dims = 4;
  s.seed = 9;
  return s;
}

TEST(SynthTest, IsAPureFunctionOfTheSpec) {
  testing::TempDir a, b;
  const Manifest ma = GenerateSyntheticDataset(SmallSpec(), a.str());
  GenerateSyntheticDataset(SmallSpec(), b.str());
  for (const auto& entry : std::filesystem::recursive_directory_iterator(a.str())) {
    if (!entry.is_regular_file()) continue;
    const auto rel = std::filesystem::relative(entry.path(), a.str()).string();
    EXPECT_EQ(ReadFileBytes(entry.path().string()), ReadFileBytes(b / rel)) << rel;
  }
  EXPECT_TRUE(LoadManifest(a / "manifest.json").speakers.size() == ma.speakers.size());
}

TEST(SynthTest, SplitsAreBalancedAndShapesFollowTheSpec) {
  testing::TempDir dir;
  const SynthSpec spec = SmallSpec();
  const Manifest m = GenerateSyntheticDataset(spec, dir.str());
  for (Split split : {Split::kTrain, Split::kTest}) {
    int ad = 0, hc = 0;
    for (const Speaker* s : m.SpeakersIn(split)) (s->label == Label::kAD ? ad : hc)++;
    EXPECT_EQ(ad, hc);
  }
  for (const Speaker& s : m.speakers) {
    ASSERT_GE(s.audio_segments.size(), static_cast<size_t>(spec.min_segments));
    ASSERT_LE(s.audio_segments.size(), static_cast<size_t>(spec.max_segments));
    const EmbeddingShape shape = ReadEmbeddingShape(m.Resolve(s.audio_segments[0].path));
    EXPECT_EQ(shape.layers, 3u);
    EXPECT_EQ(shape.hidden, 8u);
    EXPECT_GE(shape.frames, static_cast<size_t>(spec.min_frames));
    EXPECT_LE(shape.frames, static_cast<size_t>(spec.max_frames));
  }
}

TEST(SynthTest, ClassMeansDifferByDeltaOnlyWhereInformative) {
  testing::TempDir dir;
  SynthSpec spec;  // standard set, delta = 2 on dims [0, 8) of layer 3
  spec.seed = 1;
  const Manifest m = GenerateSyntheticDataset(spec, dir.str());
  const size_t layers = 6, hidden = 32;
  std::vector<double> sum[2];
  double frames[2] = {};
  for (auto& v : sum) v.assign(layers * hidden, 0.0);
  for (const Speaker& s : m.speakers) {
    const int c = s.label == Label::kAD ? 1 : 0;
    for (const auto& seg : s.audio_segments) {
      const EmbeddingTensor e = ReadEmbedding(m.Resolve(seg.path));
      for (size_t l = 0; l < layers; ++l) {
        for (size_t t = 0; t < e.frames(); ++t) {
          for (size_t h = 0; h < hidden; ++h) sum[c][l * hidden + h] += e.at(l, t, h);
        }
      }
      frames[c] += static_cast<double>(e.frames());
    }
  }
  // Pool the informative cells; check every other cell on its own.
  double informative_gap = 0.0;
  double worst_other = 0.0;
  for (size_t l = 0; l < layers; ++l) {
    for (size_t h = 0; h < hidden; ++h) {
      const double gap = sum[1][l * hidden + h] / frames[1] - sum[0][l * hidden + h] / frames[0];
      if (l == 3 && h < 8) {
        informative_gap += gap / 8.0;
      } else {
        worst_other = std::max(worst_other, std::abs(gap));
      }
    }
  }
  EXPECT_NEAR(informative_gap, 2.0, 0.05 * 2.0);
  EXPECT_LT(worst_other, 0.1);
}

TEST(SynthTest, RejectsInvalidSpecs) {
  SynthSpec s = SmallSpec();
  s.informative_layer = 3;
  EXPECT_THROW(s.Validate(), ConfigError);
  s = SmallSpec();
  s.noise_sigma = 0.0;
  EXPECT_THROW(s.Validate(), ConfigError);
  s = SmallSpec();
  s.n_test_speakers = 0;
  EXPECT_THROW(s.Validate(), ConfigError);
}

TEST(SynthTest, TextSpecWritesKeywordsAndTextSegments) {
  testing::TempDir dir;
  SynthSpec s = SmallSpec();
  s.text = TextSynthSpec{};
  const Manifest m = GenerateSyntheticDataset(s, dir.str());
  EXPECT_FALSE(m.keywords.empty());
  EXPECT_TRUE(std::any_of(m.keywords.begin(), m.keywords.end(),
                          [](const KeywordEntry& k) { return k.category == "verbs"; }));
  for (const Speaker& sp : m.speakers) EXPECT_FALSE(sp.text_segments.empty());
  EXPECT_TRUE(ValidateManifest(dir / "manifest.json").ok());
}

}  // namespace
}  // namespace adcue::store
