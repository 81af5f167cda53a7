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

#include "lukthung/lyrics/tokenizer.h"

#include <cstdint>

#include "lukthung/errors.h"

namespace lukthung::lyrics {
namespace {

// Decodes the code point at text[pos] and advances pos. Malformed sequences
// decode as U+FFFD and consume one byte.
char32_t NextCodePoint(std::string_view text, std::size_t& pos) {
  const auto b0 = static_cast<unsigned char>(text[pos]);
  std::size_t len = 1;
  char32_t cp = 0xFFFD;
  if (b0 < 0x80) {
    cp = b0;
  } else if ((b0 >> 5) == 0x6) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 >> 4) == 0xE) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 >> 3) == 0x1E) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  if (pos + len > text.size()) {
    ++pos;
    return 0xFFFD;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(text[pos + i]);
    if ((b >> 6) != 0x2) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  pos += len;
  return cp;
}

bool IsUnicodeSpace(char32_t c) {
  switch (c) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

// Trims Unicode whitespace from both ends of a token.
std::string_view Trim(std::string_view token) {
  std::size_t begin = 0;
  while (begin < token.size()) {
    std::size_t next = begin;
    if (!IsUnicodeSpace(NextCodePoint(token, next))) break;
    begin = next;
  }
  std::size_t end = begin;
  std::size_t pos = begin;
  while (pos < token.size()) {
    const char32_t c = NextCodePoint(token, pos);
    if (!IsUnicodeSpace(c)) end = pos;
  }
  return token.substr(begin, end - begin);
}

}  // namespace

TokenizeMode ParseTokenizeMode(std::string_view name) {
  if (name == "pretokenized") return TokenizeMode::kPretokenized;
  if (name == "whitespace") return TokenizeMode::kWhitespace;
  throw ValidationError("unknown tokenize mode '" + std::string(name) +
                        "' (expected pretokenized or whitespace)");
}

std::string_view TokenizeModeName(TokenizeMode mode) {
  return mode == TokenizeMode::kPretokenized ? "pretokenized" : "whitespace";
}

std::vector<std::string> Tokenize(std::string_view text, TokenizeMode mode) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  std::size_t pos = 0;
  auto flush = [&](std::size_t end) {
    std::string_view piece = text.substr(start, end - start);
    if (mode == TokenizeMode::kPretokenized) piece = Trim(piece);
    if (!piece.empty()) tokens.emplace_back(piece);
  };
  while (pos < text.size()) {
    const std::size_t here = pos;
    const char32_t c = NextCodePoint(text, pos);
    const bool separator = mode == TokenizeMode::kPretokenized
                               ? (c == U'|' || c == U'\n' || c == U'\r')
                               : IsUnicodeSpace(c);
    if (separator) {
      flush(here);
      start = pos;
    }
  }
  flush(text.size());
  return tokens;
}

std::size_t Utf8Length(std::string_view text) {
  std::size_t count = 0;
  for (std::size_t pos = 0; pos < text.size();) {
    NextCodePoint(text, pos);
    ++count;
  }
  return count;
}

}  // namespace lukthung::lyrics
