// Copyright 2026 The Lukthung Classifier Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LUKTHUNG_LYRICS_VOCABULARY_H_
#define LUKTHUNG_LYRICS_VOCABULARY_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lukthung::lyrics {

struct VocabularyOptions {
  // Tokens seen fewer times than this across the corpus are dropped.
  std::size_t min_count = 10;
  // Tokens longer than this many code points are dropped.
  std::size_t max_token_chars = 20;
};

// Token -> dense index map. Indices run 0..size()-1 in descending corpus
// frequency, ties broken by code point order.
class Vocabulary {
 public:
  struct Entry {
    std::string token;
    std::size_t count;
  };

  Vocabulary() = default;

  // Counts tokens over `corpus` (one token sequence per document) and applies
  // the filters. Throws ValidationError if nothing survives.
  static Vocabulary Build(const std::vector<std::vector<std::string>>& corpus,
                          const VocabularyOptions& options = {});

  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  const VocabularyOptions& options() const { return options_; }
  std::size_t corpus_size() const { return corpus_size_; }

  std::optional<std::size_t> IndexOf(std::string_view token) const;

  // Fingerprint of thresholds and the ordered token list.
  std::uint64_t Hash() const;

  // UTF-8 text: a header line
  //   #vocab<TAB>min_count=N<TAB>max_token_chars=N<TAB>corpus_size=N
  //   [<TAB>key=value ...]
  // followed by one "token<TAB>count" line per entry in index order. Extra
  // header fields (such as config_hash) are preserved in header_extras().
  void Save(const std::filesystem::path& path) const;
  static Vocabulary Load(const std::filesystem::path& path);
  std::string Serialize() const;
  static Vocabulary Deserialize(std::string_view text);

  void SetHeaderExtra(const std::string& key, const std::string& value);
  const std::vector<std::pair<std::string, std::string>>& header_extras() const {
    return extras_;
  }

 private:
  void Reindex();

  VocabularyOptions options_;
  std::size_t corpus_size_ = 0;
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::pair<std::string, std::string>> extras_;
};

}  // namespace lukthung::lyrics

#endif  // LUKTHUNG_LYRICS_VOCABULARY_H_
