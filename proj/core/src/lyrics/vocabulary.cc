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

#include "lukthung/lyrics/vocabulary.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "lukthung/errors.h"
#include "lukthung/hash.h"
#include "lukthung/lyrics/tokenizer.h"

namespace lukthung::lyrics {
namespace {

std::size_t ParseCount(const std::string& text, const std::string& what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw CorruptInputError("vocabulary: malformed " + what + " '" + text + "'");
  }
  return std::stoull(text);
}

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    parts.push_back(line.substr(start, tab == std::string::npos ? std::string::npos
                                                                 : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return parts;
}

}  // namespace

Vocabulary Vocabulary::Build(const std::vector<std::vector<std::string>>& corpus,
                             const VocabularyOptions& options) {
  std::map<std::string, std::size_t> counts;
  for (const auto& doc : corpus) {
    for (const auto& token : doc) ++counts[token];
  }
  Vocabulary vocab;
  vocab.options_ = options;
  vocab.corpus_size_ = corpus.size();
  for (const auto& [token, count] : counts) {
    if (count < options.min_count) continue;
    if (Utf8Length(token) > options.max_token_chars) continue;
    vocab.entries_.push_back({token, count});
  }
  if (vocab.entries_.empty()) {
    throw ValidationError(
        "vocabulary is empty after filtering (min_count=" +
        std::to_string(options.min_count) + ", max_token_chars=" +
        std::to_string(options.max_token_chars) + ", " +
        std::to_string(counts.size()) +
        " distinct tokens); lower min_count or raise max_token_chars");
  }
  // Byte-wise comparison of valid UTF-8 orders by code point.
  std::stable_sort(vocab.entries_.begin(), vocab.entries_.end(),
                   [](const Entry& a, const Entry& b) {
                     if (a.count != b.count) return a.count > b.count;
                     return a.token < b.token;
                   });
  vocab.Reindex();
  return vocab;
}

void Vocabulary::Reindex() {
  index_.clear();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!index_.emplace(entries_[i].token, i).second) {
      throw CorruptInputError("vocabulary: duplicate token '" + entries_[i].token + "'");
    }
  }
}

std::optional<std::size_t> Vocabulary::IndexOf(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t Vocabulary::Hash() const {
  Fnv1a64 h;
  h.Update("min_count=" + std::to_string(options_.min_count) +
           ";max_token_chars=" + std::to_string(options_.max_token_chars) + ";");
  for (const auto& e : entries_) {
    h.Update(e.token);
    h.Update("\t" + std::to_string(e.count) + "\n");
  }
  return h.digest();
}

void Vocabulary::SetHeaderExtra(const std::string& key, const std::string& value) {
  if (key.find_first_of("=\t\n") != std::string::npos ||
      value.find_first_of("\t\n") != std::string::npos) {
    throw ValidationError("vocabulary header field may not contain tabs or newlines");
  }
  for (auto& [k, v] : extras_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  extras_.emplace_back(key, value);
}

std::string Vocabulary::Serialize() const {
  std::string out = "#vocab\tmin_count=" + std::to_string(options_.min_count) +
                    "\tmax_token_chars=" + std::to_string(options_.max_token_chars) +
                    "\tcorpus_size=" + std::to_string(corpus_size_);
  for (const auto& [k, v] : extras_) out += "\t" + k + "=" + v;
  out += "\n";
  for (const auto& e : entries_) {
    out += e.token + "\t" + std::to_string(e.count) + "\n";
  }
  return out;
}

Vocabulary Vocabulary::Deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("#vocab", 0) != 0) {
    throw UnsupportedFormatError("vocabulary file lacks the '#vocab' header");
  }
  Vocabulary vocab;
  bool have_min = false, have_max = false, have_corpus = false;
  const auto fields = SplitTabs(line);
  for (std::size_t i = 1; i < fields.size(); ++i) {
    const auto eq = fields[i].find('=');
    if (eq == std::string::npos) {
      throw CorruptInputError("vocabulary header field '" + fields[i] + "' lacks '='");
    }
    const std::string key = fields[i].substr(0, eq);
    const std::string value = fields[i].substr(eq + 1);
    if (key == "min_count") {
      vocab.options_.min_count = ParseCount(value, key);
      have_min = true;
    } else if (key == "max_token_chars") {
      vocab.options_.max_token_chars = ParseCount(value, key);
      have_max = true;
    } else if (key == "corpus_size") {
      vocab.corpus_size_ = ParseCount(value, key);
      have_corpus = true;
    } else {
      vocab.extras_.emplace_back(key, value);
    }
  }
  if (!have_min || !have_max || !have_corpus) {
    throw CorruptInputError(
        "vocabulary header must carry min_count, max_token_chars and corpus_size");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos || tab == 0) {
      throw CorruptInputError("vocabulary line " + std::to_string(line_no) +
                              ": expected token<TAB>count");
    }
    vocab.entries_.push_back(
        {line.substr(0, tab), ParseCount(line.substr(tab + 1), "count")});
  }
  if (vocab.entries_.empty()) throw CorruptInputError("vocabulary file has no entries");
  vocab.Reindex();
  return vocab;
}

void Vocabulary::Save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << Serialize();
  if (!out) throw IoError("failed writing " + path.string());
}

Vocabulary Vocabulary::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open vocabulary " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return Deserialize(buf.str());
}

}  // namespace lukthung::lyrics
