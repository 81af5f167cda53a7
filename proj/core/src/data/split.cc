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

#include "lukthung/data/split.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "lukthung/errors.h"

namespace lukthung::data {
namespace {

void CheckRatios(const SplitRatios& r) {
  if (r.train < 0 || r.val < 0 || r.test < 0 ||
      std::abs(r.train + r.val + r.test - 1.0) > 1e-9) {
    throw ValidationError("split ratios must be non-negative and sum to 1");
  }
}

std::size_t FloorShare(double ratio, std::size_t n) {
  // The small nudge keeps exact products like 0.55 * 1000 from landing a
  // hair under the integer.
  return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 1e-9));
}

}  // namespace

SplitSizes SplitSizesFor(std::size_t n, const SplitRatios& ratios) {
  CheckRatios(ratios);
  SplitSizes s;
  s.train = FloorShare(ratios.train, n);
  s.val = std::min(FloorShare(ratios.val, n), n - s.train);
  s.test = n - s.train - s.val;
  return s;
}

DatasetSplits SplitDataset(const std::vector<SongRecord>& records,
                           const SplitRatios& ratios, std::uint64_t seed) {
  CheckRatios(ratios);
  DatasetSplits out;
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!records[i].split) {
      free.push_back(i);
      continue;
    }
    switch (*records[i].split) {
      case Split::kTrain:
        out.train.push_back(records[i]);
        break;
      case Split::kVal:
        out.val.push_back(records[i]);
        break;
      case Split::kTest:
        out.test.push_back(records[i]);
        break;
    }
  }

  std::mt19937_64 rng(seed);
  std::shuffle(free.begin(), free.end(), rng);
  const SplitSizes sizes = SplitSizesFor(free.size(), ratios);
  for (std::size_t k = 0; k < free.size(); ++k) {
    SongRecord r = records[free[k]];
    if (k < sizes.train) {
      r.split = Split::kTrain;
      out.train.push_back(std::move(r));
    } else if (k < sizes.train + sizes.val) {
      r.split = Split::kVal;
      out.val.push_back(std::move(r));
    } else {
      r.split = Split::kTest;
      out.test.push_back(std::move(r));
    }
  }

  for (auto [part, name] : {std::pair{&out.train, "train"}, std::pair{&out.val, "val"},
                            std::pair{&out.test, "test"}}) {
    if (part->empty()) {
      throw ValidationError(std::string(name) + " split is empty (" +
                            std::to_string(records.size()) + " records)");
    }
  }
  return out;
}

}  // namespace lukthung::data
