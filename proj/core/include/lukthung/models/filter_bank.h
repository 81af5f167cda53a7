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

#ifndef LUKTHUNG_MODELS_FILTER_BANK_H_
#define LUKTHUNG_MODELS_FILTER_BANK_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lukthung::models {

enum class FilterKind {
  kTimbral,   // tall in frequency, short in time
  kTemporal,  // short in frequency, long in time
};

struct FilterGroup {
  FilterKind kind;
  std::size_t freq_bins;
  std::size_t time_units;
  std::size_t n_filters;

  friend bool operator==(const FilterGroup&, const FilterGroup&) = default;
};

// The parallel front-end convolutions. Each group runs conv -> ReLU ->
// max over frequency and contributes n_filters channels.
struct FilterBankSpec {
  std::vector<FilterGroup> groups;

  // Six timbral groups (115 and 51 mel bins by 7/3/1 frames: 32/64/128
  // filters) and four temporal groups (7 bins by 32/64/128/165 frames, 32
  // filters each): 448 + 128 = 576 channels.
  static FilterBankSpec Default();

  std::size_t ChannelsOf(FilterKind kind) const;
  std::size_t total_channels() const;

  // "timbral:115x7x32,...;temporal:7x32x32,..." (freq x time x count).
  std::string ToString() const;
  static FilterBankSpec Parse(std::string_view text);

  friend bool operator==(const FilterBankSpec&, const FilterBankSpec&) = default;
};

}  // namespace lukthung::models

#endif  // LUKTHUNG_MODELS_FILTER_BANK_H_
