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

#ifndef LUKTHUNG_LYRICS_TOKENIZER_H_
#define LUKTHUNG_LYRICS_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lukthung::lyrics {

enum class TokenizeMode {
  // Output of an external word segmenter: tokens joined by '|'. Line breaks
  // also separate tokens.
  kPretokenized,
  // Split on Unicode whitespace.
  kWhitespace,
};

// Parses "pretokenized" / "whitespace"; throws ValidationError otherwise.
TokenizeMode ParseTokenizeMode(std::string_view name);
std::string_view TokenizeModeName(TokenizeMode mode);

// Splits UTF-8 text into tokens. Empty (and, in pretokenized mode,
// whitespace-only) tokens are dropped; nothing is case folded.
std::vector<std::string> Tokenize(std::string_view text, TokenizeMode mode);

// Number of Unicode code points in a UTF-8 string. Invalid bytes count as one
// code point each.
std::size_t Utf8Length(std::string_view text);

}  // namespace lukthung::lyrics

#endif  // LUKTHUNG_LYRICS_TOKENIZER_H_
