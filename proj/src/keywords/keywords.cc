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

#include "adcue/keywords/keywords.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "adcue/error.h"
#include "adcue/store/binary_io.h"

namespace adcue::keywords {

std::string_view CategoryName(Category c) {
  switch (c) {
    case Category::kNone:
      return "none";
    case Category::kNouns:
      return "nouns";
    case Category::kVerbs:
      return "verbs";
    case Category::kNounsVerbs:
      return "nouns+verbs";
  }
  return "none";
}

std::optional<Category> ParseCategory(std::string_view s) {
  for (Category c : {Category::kNone, Category::kNouns, Category::kVerbs,
                     Category::kNounsVerbs}) {
    if (s == CategoryName(c)) return c;
  }
  return std::nullopt;
}

void KeywordList::Validate() const {
  if ((category == Category::kNone) != words.empty()) {
    throw ConfigError("keyword list: category 'none' iff the list is empty");
  }
  std::set<std::string> seen;
  for (const auto& w : words) {
    if (w.empty()) throw ConfigError("keyword list: empty word");
    if (std::any_of(w.begin(), w.end(), [](unsigned char c) { return std::isupper(c); })) {
      throw ConfigError("keyword list: '" + w + "' is not lowercase");
    }
    if (!seen.insert(w).second) throw ConfigError("keyword list: duplicate '" + w + "'");
  }
}

KeywordInventory DefaultInventory() {
  return {{"boy", "girl", "woman", "mother", "cookie", "jar", "stool", "sink", "water",
           "plate", "dish", "curtain", "window", "kitchen", "cabinet", "floor"},
          {"take", "steal", "fall", "wobble", "wash", "dry", "overflow", "reach", "hand",
           "ignore", "stand"}};
}

KeywordList KeywordInventory::Select(Category category) const {
  KeywordList list{category, {}};
  if (category == Category::kNouns || category == Category::kNounsVerbs) {
    list.words.insert(list.words.end(), nouns.begin(), nouns.end());
  }
  if (category == Category::kVerbs || category == Category::kNounsVerbs) {
    list.words.insert(list.words.end(), verbs.begin(), verbs.end());
  }
  if (category != Category::kNone && list.words.empty()) {
    throw ConfigError("keyword list: no words for category '" +
                      std::string(CategoryName(category)) + "'");
  }
  list.Validate();
  return list;
}

KeywordList DefaultCookieTheftKeywords(Category category) {
  return DefaultInventory().Select(category);
}

KeywordInventory ParseKeywordFile(std::string_view text) {
  KeywordInventory inv;
  std::vector<std::string>* section = nullptr;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string item = line.substr(b, e - b + 1);
    if (item == "[nouns]") {
      section = &inv.nouns;
    } else if (item == "[verbs]") {
      section = &inv.verbs;
    } else if (item.front() == '[') {
      throw ConfigError("keyword file line " + std::to_string(line_no) +
                        ": unknown section " + item);
    } else if (section == nullptr) {
      throw ConfigError("keyword file line " + std::to_string(line_no) +
                        ": word outside a section");
    } else {
      section->push_back(item);
    }
  }
  // Nouns and verbs must be disjoint so their union has no duplicates.
  KeywordList all{Category::kNounsVerbs, inv.nouns};
  all.words.insert(all.words.end(), inv.verbs.begin(), inv.verbs.end());
  if (!all.words.empty()) all.Validate();
  return inv;
}

KeywordInventory ReadKeywordFile(const std::string& path) {
  const auto bytes = store::ReadFileBytes(path);
  return ParseKeywordFile(std::string_view(bytes.data(), bytes.size()));
}

namespace {

std::vector<double> TokenMean(const store::EmbeddingTensor& t, size_t layer) {
  if (t.frames() == 0 || t.hidden() == 0) throw DataError("empty embedding tensor");
  if (layer >= t.layers()) {
    throw ConfigError("layer " + std::to_string(layer) + " out of range (L=" +
                      std::to_string(t.layers()) + ")");
  }
  std::vector<double> out(t.hidden(), 0.0);
  for (size_t f = 0; f < t.frames(); ++f) {
    const auto row = t.frame(layer, f);
    for (size_t h = 0; h < out.size(); ++h) out[h] += row[h];
  }
  for (double& v : out) v /= static_cast<double>(t.frames());
  return out;
}

std::vector<double> MeanOfTokenMeans(std::span<const store::EmbeddingTensor> tensors,
                                     size_t layer) {
  std::vector<double> out;
  for (const auto& t : tensors) {
    const auto m = TokenMean(t, layer);
    if (out.empty()) out.assign(m.size(), 0.0);
    if (m.size() != out.size()) throw DimensionError("hidden size differs across tensors");
    for (size_t h = 0; h < m.size(); ++h) out[h] += m[h];
  }
  for (double& v : out) v /= static_cast<double>(tensors.size());
  return out;
}

}  // namespace

std::vector<double> KeywordEmbedding(std::span<const store::EmbeddingTensor> per_keyword,
                                     size_t layer, size_t hidden) {
  if (per_keyword.empty()) return std::vector<double>(hidden, 0.0);
  auto z = MeanOfTokenMeans(per_keyword, layer);
  if (z.size() != hidden) throw DimensionError("keyword embedding: hidden size mismatch");
  return z;
}

std::vector<double> UtteranceEmbedding(std::span<const store::EmbeddingTensor> segments,
                                       size_t layer) {
  if (segments.empty()) throw DataError("utterance embedding: no text segments");
  return MeanOfTokenMeans(segments, layer);
}

std::vector<double> Correlation(std::span<const double> z_u, std::span<const double> z_k) {
  if (z_u.size() != z_k.size()) {
    throw DimensionError("correlation: " + std::to_string(z_u.size()) + " vs " +
                         std::to_string(z_k.size()));
  }
  std::vector<double> out(z_u.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = z_u[i] * z_k[i];
  return out;
}

std::vector<store::EmbeddingTensor> LoadKeywordTensors(const store::Manifest& m,
                                                       const KeywordList& list) {
  list.Validate();
  std::map<std::string, const store::KeywordEntry*> by_word;
  for (const auto& k : m.keywords) by_word.emplace(k.word, &k);
  std::vector<store::EmbeddingTensor> out;
  for (const auto& w : list.words) {
    auto it = by_word.find(w);
    if (it == by_word.end()) {
      throw DataError("missing text embeddings for keyword '" + w + "'");
    }
    out.push_back(store::ReadEmbedding(m.Resolve(it->second->path)));
  }
  return out;
}

store::EmbeddingTensor CorrelationFeatureTensor(const store::Manifest& m,
                                                const store::Speaker& speaker,
                                                std::span<const double> z_k, size_t layer) {
  if (speaker.text_segments.empty()) {
    throw DataError("missing text embeddings for speaker '" + speaker.speaker_id + "'");
  }
  std::vector<store::EmbeddingTensor> segs;
  for (const auto& t : speaker.text_segments) {
    segs.push_back(store::ReadEmbedding(m.Resolve(t.path)));
  }
  const auto corr = Correlation(UtteranceEmbedding(segs, layer), z_k);
  store::EmbeddingTensor out(1, 1, corr.size());
  for (size_t h = 0; h < corr.size(); ++h) out.at(0, 0, h) = static_cast<float>(corr[h]);
  return out;
}

}  // namespace adcue::keywords
