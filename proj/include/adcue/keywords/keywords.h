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

// Task-pertinence features for the Cookie Theft picture description task:
// the element-wise product of a speaker's utterance embedding z_u and the
// mean embedding z_k of a list of picture keywords.

#ifndef ADCUE_KEYWORDS_KEYWORDS_H_
#define ADCUE_KEYWORDS_KEYWORDS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adcue/store/embedding.h"
#include "adcue/store/manifest.h"

namespace adcue::keywords {

enum class Category { kNone, kNouns, kVerbs, kNounsVerbs };

std::string_view CategoryName(Category c);  // none, nouns, verbs, nouns+verbs
std::optional<Category> ParseCategory(std::string_view s);

struct KeywordList {
  Category category = Category::kNone;
  std::vector<std::string> words;

  // category none <=> no words; words lowercase and unique.
  void Validate() const;
};

// Bumped whenever the built-in inventory changes.
inline constexpr int kDefaultKeywordListVersion = 1;

// Content units of the Cookie Theft scene: 16 nouns, 11 verbs.
KeywordList DefaultCookieTheftKeywords(Category category);

struct KeywordInventory {
  std::vector<std::string> nouns;
  std::vector<std::string> verbs;

  KeywordList Select(Category category) const;
};

KeywordInventory DefaultInventory();

// Plain text, one word per line under "[nouns]" / "[verbs]" headers.
// Blank lines and lines starting with '#' are ignored.
KeywordInventory ParseKeywordFile(std::string_view text);
KeywordInventory ReadKeywordFile(const std::string& path);

// Token mean at `layer` of each keyword, then mean over keywords. An empty
// list (category none) gives the zero vector of length `hidden`.
std::vector<double> KeywordEmbedding(std::span<const store::EmbeddingTensor> per_keyword,
                                     size_t layer, size_t hidden);

// Token mean at `layer` per segment, then mean over segments.
std::vector<double> UtteranceEmbedding(std::span<const store::EmbeddingTensor> segments,
                                       size_t layer);

// out[i] = z_u[i] * z_k[i]
std::vector<double> Correlation(std::span<const double> z_u, std::span<const double> z_k);

// Loads the keyword tensors named by `list` from the manifest's keyword
// entries. Throws DataError naming the first keyword without an embedding.
std::vector<store::EmbeddingTensor> LoadKeywordTensors(const store::Manifest& m,
                                                       const KeywordList& list);

// Correlation vector of one speaker wrapped as a 1 x 1 x H tensor, the
// single-segment input of a correlation head.
store::EmbeddingTensor CorrelationFeatureTensor(const store::Manifest& m,
                                                const store::Speaker& speaker,
                                                std::span<const double> z_k, size_t layer);

}  // namespace adcue::keywords

#endif  // ADCUE_KEYWORDS_KEYWORDS_H_
