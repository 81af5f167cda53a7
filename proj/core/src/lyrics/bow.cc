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

#include "lukthung/lyrics/bow.h"

#include <algorithm>
#include <map>

namespace lukthung::lyrics {

nn::Tensor BowVector::ToTensor() const {
  return nn::Tensor({values.size()}, std::vector<float>(values.begin(), values.end()));
}

BowVector ComputeBow(const std::vector<std::string>& tokens,
                     const Vocabulary& vocab, std::string song_id,
                     double log_base) {
  // Ordered so the arithmetic below visits words in index order.
  std::map<std::size_t, std::size_t> counts;
  for (const auto& token : tokens) {
    if (auto idx = vocab.IndexOf(token)) ++counts[*idx];
  }
  BowVector bow{std::vector<double>(vocab.size(), 0.0), std::move(song_id)};
  std::size_t max_count = 0;
  for (const auto& [idx, c] : counts) max_count = std::max(max_count, c);
  if (max_count == 0) return bow;
  if (max_count == 1) {
    for (const auto& [idx, c] : counts) bow.values[idx] = 1.0;
    return bow;
  }
  const double ln_base = std::log(log_base);
  const double denom = std::log(static_cast<double>(max_count)) / ln_base;
  for (const auto& [idx, c] : counts) {
    if (c == max_count) {
      bow.values[idx] = 1.0;
    } else {
      bow.values[idx] = (std::log(static_cast<double>(c)) / ln_base) / denom;
    }
  }
  return bow;
}

}  // namespace lukthung::lyrics
