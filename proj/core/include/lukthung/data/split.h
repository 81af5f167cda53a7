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

#ifndef LUKTHUNG_DATA_SPLIT_H_
#define LUKTHUNG_DATA_SPLIT_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lukthung/data/manifest.h"

namespace lukthung::data {

struct SplitRatios {
  double train = 0.55;
  double val = 0.2;
  double test = 0.25;
};

struct SplitSizes {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
};

// floor(train * n), floor(val * n), and the remainder for test.
SplitSizes SplitSizesFor(std::size_t n, const SplitRatios& ratios = {});

struct DatasetSplits {
  std::vector<SongRecord> train;
  std::vector<SongRecord> val;
  std::vector<SongRecord> test;
};

// Records that already name a split keep it and stay in manifest order. The
// rest are shuffled with `seed` and cut into contiguous slices sized by
// SplitSizesFor, appended after the preset ones. Every output record carries
// its split. Throws ValidationError if the ratios do not sum to 1 or any
// split ends up empty.
DatasetSplits SplitDataset(const std::vector<SongRecord>& records,
                           const SplitRatios& ratios, std::uint64_t seed);

}  // namespace lukthung::data

#endif  // LUKTHUNG_DATA_SPLIT_H_
