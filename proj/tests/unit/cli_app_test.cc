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


#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "adcue/audio/wav_io.h"
#include "adcue/cli/app.h"
#include "adcue/store/binary_io.h"
#include "adcue/store/manifest.h"
#include "tone.h"
#include "json.hpp"
#include "test_util.h"

namespace adcue::cli {
namespace {

using nlohmann::json;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "adcue");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = Main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

void WriteText(const std::string& path, const std::string& text) {
  store::WriteFileBytes(path, std::span<const char>(text.data(), text.size()));
}

std::string ReadText(const std::string& path) {
  const auto b = store::ReadFileBytes(path);
  return {b.begin(), b.end()};
}

constexpr char kSmallSpec[] = R"(n_train_speakers: 20
n_test_speakers: 10
layers: 3
hidden: 8
informative_layer: 1
informative_dims: 4
class_separation: 3
seed: 5
)";

TEST(CliTest, MissingOrUnknownSubcommandIsAConfigError) {
  EXPECT_EQ(Cli({}).code, kExitConfig);
  const Result r = Cli({"fly"});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_EQ(json::parse(r.err)["error"], "config");
}

TEST(CliTest, HelpListsDefaults) {
  const Result r = Cli({"train", "--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* needle : {"--lr", "0.0001", "--epochs", "50", "--aggregation", "ms",
                             "--pooling", "attentive", "--keyword-category", "nouns",
                             "--out-dir", "runs", "--seed", "0 1 2 3 4"}) {
    EXPECT_NE(r.out.find(needle), std::string::npos) << needle;
  }
  const Result c = Cli({"combine", "--help"});
  EXPECT_NE(c.out.find("1e-3"), std::string::npos);
}

TEST(CliTest, ErrorKindsMapToExitCodes) {
  testing::TempDir dir;
  WriteText(dir / "spec.yaml", kSmallSpec);
  ASSERT_EQ(Cli({"synth", "--spec", dir / "spec.yaml", "--out-dir", dir / "d"}).code, 0);

  const Result missing = Cli({"eval", "--checkpoint", dir / "nope.adhp", "--manifest",
                              dir / "d/manifest.json"});
  EXPECT_EQ(missing.code, kExitData);
  EXPECT_EQ(json::parse(missing.err)["error"], "data");

  const Result bad_lr = Cli({"train", "--manifest", dir / "d/manifest.json", "--lr", "-1"});
  EXPECT_EQ(bad_lr.code, kExitConfig);
  const Result bad_agg = Cli({"train", "--manifest", dir / "d/manifest.json",
                              "--aggregation", "max"});
  EXPECT_EQ(bad_agg.code, kExitConfig);
  const Result no_manifest = Cli({"train", "--manifest", dir / "missing.json"});
  EXPECT_EQ(no_manifest.code, kExitData);

  WriteText(dir / "bad.yaml", "trian: {}\n");
  EXPECT_EQ(Cli({"train", "--config", dir / "bad.yaml"}).code, kExitConfig);
  WriteText(dir / "bad_spec.yaml", "seed: x\n");
  EXPECT_EQ(Cli({"synth", "--spec", dir / "bad_spec.yaml", "--out-dir", dir / "e"}).code,
            kExitConfig);
}

TEST(CliTest, SynthTrainEvalEndToEnd) {
  testing::TempDir dir;
  WriteText(dir / "spec.yaml", kSmallSpec);
  ASSERT_EQ(Cli({"synth", "--spec", dir / "spec.yaml", "--out-dir", dir / "d"}).code, 0);
  WriteText(dir / "run.yaml", "manifest: d/manifest.json\nout_dir: runs\n"
                              "head: {ms_layer: 1}\ntrain: {lr: 0.001, epochs: 20, seeds: [0, 1]}\n");
  const Result train = Cli({"train", "--config", dir / "run.yaml"});
  ASSERT_EQ(train.code, 0) << train.err;
  const json report = json::parse(train.out);
  EXPECT_EQ(report["tag"], "audio");
  ASSERT_EQ(report["runs"].size(), 2u);
  EXPECT_EQ(report["layer"], 1);
  EXPECT_EQ(report["config"]["pipeline"]["train"]["epochs"], 20);
  EXPECT_EQ(ReadText(dir / "runs/audio/report.json"), train.out);
  for (const char* f : {"seed0.adhp", "seed1.adhp", "features_seed0.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / (std::string("runs/audio/") + f))) << f;
  }

  const Result eval = Cli({"eval", "--checkpoint", dir / "runs/audio/seed1.adhp", "--manifest",
                           dir / "d/manifest.json"});
  ASSERT_EQ(eval.code, 0) << eval.err;
  EXPECT_EQ(json::parse(eval.out), report["runs"][1]["metrics"]);

  const Result seed_only = Cli({"train", "--config", dir / "run.yaml", "--seed", "1", "--tag",
                                "one"});
  ASSERT_EQ(seed_only.code, 0);
  EXPECT_EQ(json::parse(seed_only.out)["runs"][0], report["runs"][1]);
}

TEST(CliTest, ReportsAreByteIdenticalAcrossOutputDirectories) {
  testing::TempDir dir;
  WriteText(dir / "spec.yaml", kSmallSpec);
  ASSERT_EQ(Cli({"synth", "--spec", dir / "spec.yaml", "--out-dir", dir / "d"}).code, 0);
  const std::vector<std::string> common = {"train", "--manifest", dir / "d/manifest.json",
                                           "--epochs", "3", "--ms-layer", "1"};
  auto with_out = [&](const std::string& out) {
    auto a = common;
    a.push_back("--out-dir");
    a.push_back(out);
    return a;
  };
  const Result a = Cli(with_out(dir / "a"));
  const Result b = Cli(with_out(dir / "b"));
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(store::ReadFileBytes(dir / "a/audio/seed2.adhp"),
            store::ReadFileBytes(dir / "b/audio/seed2.adhp"));
}

TEST(CliTest, SweepCombineAndAblateRun) {
  testing::TempDir dir;
  WriteText(dir / "spec.yaml", std::string(kSmallSpec) +
                                   "text: {layers: 3, hidden: 16, informative_layer: 1, "
                                   "keyword_layer: 1, informative_dims: 4, keyword_dims: 4}\n");
  ASSERT_EQ(Cli({"synth", "--spec", dir / "spec.yaml", "--out-dir", dir / "d"}).code, 0);
  const std::string m = dir / "d/manifest.json";
  const std::string out = dir / "runs";

  const Result sweep = Cli({"sweep", "--manifest", m, "--out-dir", out, "--epochs", "10",
                            "--lr", "1e-3"});
  ASSERT_EQ(sweep.code, 0) << sweep.err;
  const json s = json::parse(sweep.out);
  EXPECT_EQ(s["best_layer"], 1);
  EXPECT_EQ(s["curve"].size(), 3u);
  EXPECT_TRUE(std::filesystem::exists(dir / "runs/audio/sweep.csv"));

  std::vector<std::string> features;
  for (const char* mod : {"audio", "text", "corr"}) {
    const Result t = Cli({"train", "--manifest", m, "--out-dir", out, "--modality", mod,
                          "--ms-layer", "1", "--keyword-layer", "1", "--seed", "0",
                          "--epochs", "5"});
    ASSERT_EQ(t.code, 0) << mod << t.err;
    features.push_back(out + "/" + mod + "/features_seed0.json");
  }
  const Result comb = Cli({"combine", "--features", features[2], features[0], features[1],
                           "--seeds", "0", "--report", dir / "fused.json"});
  ASSERT_EQ(comb.code, 0) << comb.err;
  const json fused = json::parse(comb.out);
  EXPECT_EQ(fused["tag"], "audio+text+corr");
  EXPECT_EQ(fused["config"]["classifier"]["input_dim"], 24);
  EXPECT_EQ(fused["config"]["train"]["lr"], 1e-3);
  EXPECT_EQ(ReadText(dir / "fused.json"), comb.out);

  const Result ablate = Cli({"ablate", "--manifest", m, "--out-dir", out, "--ms-layer", "1",
                             "--seed", "0", "--epochs", "2"});
  ASSERT_EQ(ablate.code, 0) << ablate.err;
  EXPECT_EQ(std::count(ablate.out.begin(), ablate.out.end(), '\n'), 5);
}

TEST(CliTest, SegmentAndAugmentWriteDeterministicViews) {
  testing::TempDir dir;
  std::filesystem::create_directories(dir / "in");
  audio::WriteWav(testing::Tone(220.0, 37.0, 0.3), dir / "in/s1.wav");
  audio::WriteWav(testing::Tone(330.0, 10.0, 0.3), dir / "in/s2.wav");
  WriteText(dir / "labels.csv", "speaker_id,label,split\ns1,AD,train\ns2,HC,test\n");
  const Result seg = Cli({"segment", "--input-dir", dir / "in", "--out-dir", dir / "seg",
                          "--labels", dir / "labels.csv"});
  ASSERT_EQ(seg.code, 0) << seg.err;
  EXPECT_EQ(json::parse(seg.out)["segments"], 3);
  const store::Manifest m = store::LoadManifest(dir / "seg/manifest.json", false);
  ASSERT_EQ(m.speakers[0].audio_segments.size(), 2u);
  EXPECT_EQ(m.speakers[0].audio_segments[1].start_s, 7.5);
  EXPECT_EQ(m.speakers[1].audio_segments[0].duration_s, 10.0);
  const audio::Waveform first = audio::ReadWav(m.Resolve(m.speakers[0].audio_segments[0].wav_path));
  EXPECT_NEAR(audio::PeakAbs(first), audio::kNormalizePeak, 1e-4);

  std::filesystem::copy(dir / "seg", dir / "seg2", std::filesystem::copy_options::recursive);
  for (const char* d : {"seg", "seg2"}) {
    const Result aug = Cli({"augment", "--manifest", dir / (std::string(d) + "/manifest.json"),
                            "--seed", "7", "--views", "2"});
    ASSERT_EQ(aug.code, 0) << aug.err;
  }
  const store::Manifest am = store::LoadManifest(dir / "seg/manifest.json", false);
  const auto& views = am.speakers[0].audio_segments[1].augmented_wav_paths;
  ASSERT_EQ(views.size(), 2u);
  for (const auto& v : views) {
    EXPECT_EQ(store::ReadFileBytes(dir / ("seg/" + v)), store::ReadFileBytes(dir / ("seg2/" + v)));
  }
  EXPECT_NE(store::ReadFileBytes(dir / ("seg/" + views[0])),
            store::ReadFileBytes(dir / ("seg/" + views[1])));

  WriteText(dir / "labels_bad.csv", "s1,AD,train\n");
  EXPECT_EQ(Cli({"segment", "--input-dir", dir / "in", "--out-dir", dir / "x", "--labels",
                 dir / "labels_bad.csv"})
                .code,
            kExitData);
}

// The installed binary behaves like Main, exit codes included.
TEST(CliProcessTest, BinaryReportsExitCodes) {
  const char* cli = std::getenv("ADCUE_CLI");
  if (cli == nullptr) GTEST_SKIP() << "ADCUE_CLI not set";
  testing::TempDir dir;
  auto status = [&](const std::string& args) {
    const std::string cmd = std::string(cli) + " " + args + " >" + (dir / "o.txt") + " 2>" +
                            (dir / "e.txt");
    return WEXITSTATUS(std::system(cmd.c_str()));
  };
  WriteText(dir / "spec.yaml", kSmallSpec);
  EXPECT_EQ(status("synth --spec " + (dir / "spec.yaml") + " --out-dir " + (dir / "d")), 0);
  EXPECT_EQ(status("eval --checkpoint " + (dir / "x.adhp") + " --manifest " +
                   (dir / "d/manifest.json")),
            kExitData);
  EXPECT_EQ(json::parse(ReadText(dir / "e.txt"))["error"], "data");
  EXPECT_EQ(status("train --manifest " + (dir / "d/manifest.json") + " --epochs 0"),
            kExitConfig);
  EXPECT_EQ(status("--bogus"), kExitConfig);
}

}  // namespace
}  // namespace adcue::cli
