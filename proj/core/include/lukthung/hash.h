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

#ifndef LUKTHUNG_HASH_H_
#define LUKTHUNG_HASH_H_

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>

namespace lukthung {

// 64-bit FNV-1a. Used for cache keys and config fingerprints, never for
// anything security related.
class Fnv1a64 {
 public:
  Fnv1a64& Update(std::span<const std::byte> bytes) {
    for (std::byte b : bytes) {
      state_ ^= static_cast<std::uint64_t>(b);
      state_ *= kPrime;
    }
    return *this;
  }
  Fnv1a64& Update(std::string_view text) {
    return Update(std::as_bytes(std::span(text.data(), text.size())));
  }
  std::uint64_t digest() const { return state_; }

 private:
  static constexpr std::uint64_t kOffset = 0xcbf29ce484222325ULL;
  static constexpr std::uint64_t kPrime = 0x100000001b3ULL;
  std::uint64_t state_ = kOffset;
};

inline std::uint64_t HashBytes(std::span<const std::byte> bytes) {
  return Fnv1a64().Update(bytes).digest();
}

inline std::uint64_t HashString(std::string_view text) {
  return Fnv1a64().Update(text).digest();
}

// Fixed-width lowercase hex, the form hashes take in every artifact.
inline std::string HashToHex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf, 16);
}

}  // namespace lukthung

#endif  // LUKTHUNG_HASH_H_
