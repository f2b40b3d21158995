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

#include "adcue/store/manifest.h"

#include <filesystem>
#include <fstream>
#include <set>

#include "adcue/error.h"
#include "adcue/store/binary_io.h"

namespace adcue::store {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view LabelName(Label l) { return l == Label::kAD ? "AD" : "HC"; }
std::string_view SplitName(Split s) { return s == Split::kTrain ? "train" : "test"; }

std::optional<Label> ParseLabel(std::string_view s) {
  if (s == "AD") return Label::kAD;
  if (s == "HC") return Label::kHC;
  return std::nullopt;
}

std::optional<Split> ParseSplit(std::string_view s) {
  if (s == "train") return Split::kTrain;
  if (s == "test") return Split::kTest;
  return std::nullopt;
}

std::string Manifest::Resolve(const std::string& relative) const {
  const fs::path p(relative);
  if (p.is_absolute() || base_dir.empty()) return p.string();
  return (fs::path(base_dir) / p).string();
}

std::vector<const Speaker*> Manifest::SpeakersIn(Split split) const {
  std::vector<const Speaker*> out;
  for (const Speaker& s : speakers) {
    if (s.split == split) out.push_back(&s);
  }
  return out;
}

namespace {

// Collects violations while walking the document.
class Checker {
 public:
  Checker(std::string base_dir, bool check_files)
      : base_dir_(std::move(base_dir)), check_files_(check_files) {}

  void Fail(std::string msg) { errors.push_back(std::move(msg)); }

  template <typename T>
  bool Get(const json& obj, const char* key, const std::string& where, T* out,
           bool required = true) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) Fail(where + ": missing field '" + key + "'");
      return false;
    }
    try {
      *out = it->get<T>();
      return true;
    } catch (const json::exception&) {
      Fail(where + ": field '" + key + "' has the wrong type");
      return false;
    }
  }

  void CheckFile(const std::string& rel, const std::string& where) {
    if (rel.empty()) {
      Fail(where + ": empty path");
      return;
    }
    if (!check_files_) return;
    fs::path p(rel);
    if (!p.is_absolute() && !base_dir_.empty()) p = fs::path(base_dir_) / p;
    if (!fs::exists(p)) Fail(where + ": missing file '" + rel + "'");
  }

  std::vector<std::string> errors;

 private:
  std::string base_dir_;
  bool check_files_;
};

}  // namespace

ManifestValidation ValidateManifestJson(const json& doc, const std::string& base_dir,
                                        bool check_files) {
  Checker c(base_dir, check_files);
  Manifest m;
  m.base_dir = base_dir;
  if (!doc.is_object()) {
    c.Fail("manifest: top level must be an object");
    return {std::nullopt, c.errors};
  }
  if (c.Get(doc, "version", "manifest", &m.version) && m.version != 1) {
    c.Fail("manifest: unsupported version " + std::to_string(m.version));
  }
  if (auto it = doc.find("metadata"); it != doc.end()) m.metadata = *it;

  auto sp = doc.find("speakers");
  if (sp == doc.end() || !sp->is_array()) {
    c.Fail("manifest: 'speakers' must be an array");
    return {std::nullopt, c.errors};
  }
  std::set<std::string> seen;
  size_t index = 0;
  for (const json& js : *sp) {
    Speaker s;
    std::string where = "speakers[" + std::to_string(index++) + "]";
    if (!js.is_object()) {
      c.Fail(where + ": must be an object");
      continue;
    }
    if (c.Get(js, "speaker_id", where, &s.speaker_id)) {
      if (s.speaker_id.empty()) c.Fail(where + ": empty speaker_id");
      where = "speaker '" + s.speaker_id + "'";
      if (!seen.insert(s.speaker_id).second) {
        c.Fail("duplicate speaker id '" + s.speaker_id + "'");
      }
    }
    std::string label, split;
    if (c.Get(js, "label", where, &label)) {
      if (auto l = ParseLabel(label)) {
        s.label = *l;
      } else {
        c.Fail(where + ": unknown label '" + label + "'");
      }
    }
    if (c.Get(js, "split", where, &split)) {
      if (auto v = ParseSplit(split)) {
        s.split = *v;
      } else {
        c.Fail(where + ": unknown split '" + split + "'");
      }
    }
    if (auto it = js.find("audio_segments"); it != js.end()) {
      size_t k = 0;
      for (const json& ja : *it) {
        const std::string w = where + " audio_segments[" + std::to_string(k++) + "]";
        AudioSegment a;
        if (c.Get(ja, "path", w, &a.path)) c.CheckFile(a.path, w);
        c.Get(ja, "start_s", w, &a.start_s);
        if (c.Get(ja, "duration_s", w, &a.duration_s) && !(a.duration_s > 0.0)) {
          c.Fail(w + ": duration_s must be > 0");
        }
        c.Get(ja, "wav_path", w, &a.wav_path, false);
        if (c.Get(ja, "augmented_paths", w, &a.augmented_paths, false)) {
          for (const auto& p : a.augmented_paths) c.CheckFile(p, w);
        }
        c.Get(ja, "augmented_wav_paths", w, &a.augmented_wav_paths, false);
        s.audio_segments.push_back(std::move(a));
      }
    }
    if (auto it = js.find("text_segments"); it != js.end()) {
      size_t k = 0;
      for (const json& jt : *it) {
        const std::string w = where + " text_segments[" + std::to_string(k++) + "]";
        TextSegment t;
        if (c.Get(jt, "path", w, &t.path)) c.CheckFile(t.path, w);
        c.Get(jt, "token_count", w, &t.token_count);
        s.text_segments.push_back(std::move(t));
      }
    }
    std::string transcript;
    if (c.Get(js, "transcript_path", where, &transcript, false)) {
      s.transcript_path = transcript;
    }
    m.speakers.push_back(std::move(s));
  }

  if (auto it = doc.find("keywords"); it != doc.end()) {
    size_t k = 0;
    for (const json& jk : *it) {
      const std::string w = "keywords[" + std::to_string(k++) + "]";
      KeywordEntry e;
      c.Get(jk, "word", w, &e.word);
      if (c.Get(jk, "category", w, &e.category) && e.category != "nouns" &&
          e.category != "verbs") {
        c.Fail(w + ": unknown keyword category '" + e.category + "'");
      }
      if (c.Get(jk, "path", w, &e.path)) c.CheckFile(e.path, w);
      m.keywords.push_back(std::move(e));
    }
  }

  if (m.SpeakersIn(Split::kTrain).empty()) c.Fail("empty split 'train'");
  if (m.SpeakersIn(Split::kTest).empty()) c.Fail("empty split 'test'");

  if (!c.errors.empty()) return {std::nullopt, c.errors};
  return {std::move(m), {}};
}

ManifestValidation ValidateManifest(const std::string& path, bool check_files) {
  json doc;
  try {
    const auto bytes = ReadFileBytes(path);
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::exception& e) {
    return {std::nullopt, {"manifest '" + path + "': " + e.what()}};
  } catch (const DataError& e) {
    return {std::nullopt, {e.what()}};
  }
  return ValidateManifestJson(doc, fs::path(path).parent_path().string(), check_files);
}

Manifest LoadManifest(const std::string& path, bool check_files) {
  ManifestValidation v = ValidateManifest(path, check_files);
  if (!v.ok()) {
    std::string msg = "invalid manifest '" + path + "':";
    for (const auto& e : v.errors) msg += "\n  " + e;
    throw DataError(msg);
  }
  return std::move(*v.manifest);
}

json ManifestToJson(const Manifest& m) {
  json speakers = json::array();
  for (const Speaker& s : m.speakers) {
    json audio = json::array();
    for (const AudioSegment& a : s.audio_segments) {
      json ja = {{"path", a.path}, {"start_s", a.start_s}, {"duration_s", a.duration_s}};
      if (!a.wav_path.empty()) ja["wav_path"] = a.wav_path;
      if (!a.augmented_paths.empty()) ja["augmented_paths"] = a.augmented_paths;
      if (!a.augmented_wav_paths.empty()) ja["augmented_wav_paths"] = a.augmented_wav_paths;
      audio.push_back(std::move(ja));
    }
    json text = json::array();
    for (const TextSegment& t : s.text_segments) {
      text.push_back({{"path", t.path}, {"token_count", t.token_count}});
    }
    json js = {{"speaker_id", s.speaker_id},
               {"label", LabelName(s.label)},
               {"split", SplitName(s.split)},
               {"audio_segments", std::move(audio)},
               {"text_segments", std::move(text)}};
    if (s.transcript_path) js["transcript_path"] = *s.transcript_path;
    speakers.push_back(std::move(js));
  }
  json doc = {{"version", m.version}, {"speakers", std::move(speakers)}};
  if (!m.keywords.empty()) {
    json kw = json::array();
    for (const KeywordEntry& k : m.keywords) {
      kw.push_back({{"word", k.word}, {"category", k.category}, {"path", k.path}});
    }
    doc["keywords"] = std::move(kw);
  }
  if (!m.metadata.empty()) doc["metadata"] = m.metadata;
  return doc;
}

void SaveManifest(const Manifest& m, const std::string& path) {
  const std::string text = ManifestToJson(m).dump(2) + "\n";
  WriteFileBytes(path, std::span<const char>(text.data(), text.size()));
}

}  // namespace adcue::store
