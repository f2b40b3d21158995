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

#ifndef ADCUE_STORE_MANIFEST_H_
#define ADCUE_STORE_MANIFEST_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace adcue::store {

// Class 1 is AD throughout (labels, logits, F1 bookkeeping).
enum class Label { kHC = 0, kAD = 1 };
enum class Split { kTrain, kTest };

std::string_view LabelName(Label l);
std::string_view SplitName(Split s);
std::optional<Label> ParseLabel(std::string_view s);
std::optional<Split> ParseSplit(std::string_view s);

struct AudioSegment {
  std::string path;  // embedding file
  double start_s = 0.0;
  double duration_s = 0.0;  // true (unpadded) length
  std::string wav_path;     // optional source waveform
  // Embeddings of augmented views of this segment; one is picked per epoch
  // when training with augmentation on.
  std::vector<std::string> augmented_paths;
  std::vector<std::string> augmented_wav_paths;
};

struct TextSegment {
  std::string path;
  int64_t token_count = 0;
};

struct KeywordEntry {
  std::string word;
  std::string category;  // "nouns" or "verbs"
  std::string path;      // embedding of the keyword's tokens
};

struct Speaker {
  std::string speaker_id;
  Label label = Label::kHC;
  Split split = Split::kTrain;
  std::vector<AudioSegment> audio_segments;
  std::vector<TextSegment> text_segments;
  std::optional<std::string> transcript_path;
};

// Dataset index. Paths are stored relative to the manifest's directory.
struct Manifest {
  int version = 1;
  std::vector<Speaker> speakers;
  std::vector<KeywordEntry> keywords;
  nlohmann::json metadata = nlohmann::json::object();
  std::string base_dir;  // directory of the manifest file; not serialized

  std::string Resolve(const std::string& relative) const;
  std::vector<const Speaker*> SpeakersIn(Split split) const;
};

struct ManifestValidation {
  std::optional<Manifest> manifest;
  std::vector<std::string> errors;  // every violation found

  bool ok() const { return errors.empty(); }
};

// Parses and checks every invariant (unique ids, known labels/splits,
// nonempty train and test splits, referenced files present when
// `check_files`). The manifest is returned only when no error was found.
ManifestValidation ValidateManifest(const std::string& path, bool check_files = true);
ManifestValidation ValidateManifestJson(const nlohmann::json& doc,
                                        const std::string& base_dir,
                                        bool check_files = true);

// ValidateManifest, throwing DataError listing all violations.
Manifest LoadManifest(const std::string& path, bool check_files = true);

nlohmann::json ManifestToJson(const Manifest& m);
void SaveManifest(const Manifest& m, const std::string& path);

}  // namespace adcue::store

#endif  // ADCUE_STORE_MANIFEST_H_
