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

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "lukthung/data/split.h"
#include "lukthung/errors.h"

namespace lukthung::data {
namespace {

std::vector<SongRecord> Records(std::size_t n) {
  std::vector<SongRecord> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].id = "song" + std::to_string(i);
    out[i].label = i % 2 == 0 ? Label::kLukthung : Label::kOther;
  }
  return out;
}

std::vector<std::string> Ids(const std::vector<SongRecord>& records) {
  std::vector<std::string> ids;
  for (const auto& r : records) ids.push_back(r.id);
  return ids;
}

TEST(SplitSizes, FloorRule) {
  // Integer arithmetic oracle: floor(55 n / 100) and floor(20 n / 100).
  for (std::size_t n : {10u, 100u, 1000u, 10547u}) {
    const SplitSizes s = SplitSizesFor(n);
    EXPECT_EQ(s.train, 55 * n / 100) << n;
    EXPECT_EQ(s.val, 20 * n / 100) << n;
    EXPECT_EQ(s.test, n - 55 * n / 100 - 20 * n / 100) << n;
  }
}

TEST(SplitSizes, Examples) {
  const SplitSizes a = SplitSizesFor(1000);
  EXPECT_EQ(a.train, 550u);
  EXPECT_EQ(a.val, 200u);
  EXPECT_EQ(a.test, 250u);
  const SplitSizes b = SplitSizesFor(10);
  EXPECT_EQ(b.train, 5u);
  EXPECT_EQ(b.val, 2u);
  EXPECT_EQ(b.test, 3u);
  const SplitSizes c = SplitSizesFor(10547);
  EXPECT_EQ(c.train, 5800u);
  EXPECT_EQ(c.val, 2109u);
  EXPECT_EQ(c.test, 2638u);
}

TEST(SplitSizes, FloorRuleForEveryNUpTo2000) {
  for (std::size_t n = 0; n <= 2000; ++n) {
    const SplitSizes s = SplitSizesFor(n);
    ASSERT_EQ(s.train, 55 * n / 100) << n;
    ASSERT_EQ(s.val, 20 * n / 100) << n;
    ASSERT_EQ(s.train + s.val + s.test, n);
  }
}

TEST(SplitSizes, RatiosMustSumToOne) {
  EXPECT_THROW(SplitSizesFor(10, {0.5, 0.2, 0.2}), ValidationError);
  EXPECT_THROW(SplitSizesFor(10, {1.2, -0.1, -0.1}), ValidationError);
  EXPECT_NO_THROW(SplitSizesFor(10, {0.6, 0.2, 0.2}));
}

TEST(SplitDataset, PartitionsTheInput) {
  const auto records = Records(137);
  const DatasetSplits s = SplitDataset(records, {}, 5);
  EXPECT_EQ(s.train.size(), 75u);
  EXPECT_EQ(s.val.size(), 27u);
  EXPECT_EQ(s.test.size(), 35u);
  std::multiset<std::string> seen;
  for (const auto* part : {&s.train, &s.val, &s.test}) {
    for (const auto& r : *part) seen.insert(r.id);
  }
  const auto ids = Ids(records);
  EXPECT_EQ(seen, std::multiset<std::string>(ids.begin(), ids.end()));
  for (const auto& r : s.train) EXPECT_EQ(r.split, Split::kTrain);
  for (const auto& r : s.val) EXPECT_EQ(r.split, Split::kVal);
  for (const auto& r : s.test) EXPECT_EQ(r.split, Split::kTest);
}

TEST(SplitDataset, DeterministicInSeed) {
  const auto records = Records(200);
  const DatasetSplits a = SplitDataset(records, {}, 11);
  const DatasetSplits b = SplitDataset(records, {}, 11);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.val, b.val);
  EXPECT_EQ(a.test, b.test);
  const DatasetSplits c = SplitDataset(records, {}, 12);
  EXPECT_NE(Ids(a.train), Ids(c.train));
}

TEST(SplitDataset, ShufflesBeforeSlicing) {
  const DatasetSplits s = SplitDataset(Records(100), {}, 3);
  auto ids = Ids(s.train);
  // A contiguous prefix of the input would be song0..song54 in order.
  EXPECT_NE(ids, Ids(std::vector<SongRecord>(Records(55))));
}

TEST(SplitDataset, PresetSplitsAreKept) {
  auto records = Records(40);
  records[3].split = Split::kTest;
  records[7].split = Split::kTest;
  records[9].split = Split::kTrain;
  const DatasetSplits s = SplitDataset(records, {}, 1);
  // Preset records come first in manifest order; 37 free records are split
  // 20 / 7 / 10.
  ASSERT_EQ(s.test.size(), 2u + 10u);
  EXPECT_EQ(s.test[0].id, "song3");
  EXPECT_EQ(s.test[1].id, "song7");
  ASSERT_EQ(s.train.size(), 1u + 20u);
  EXPECT_EQ(s.train[0].id, "song9");
  EXPECT_EQ(s.val.size(), 7u);
}

TEST(SplitDataset, FullyPresetManifestIsNotShuffled) {
  auto records = Records(9);
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].split = i < 5 ? Split::kTrain : i < 7 ? Split::kVal : Split::kTest;
  }
  const DatasetSplits s = SplitDataset(records, {}, 99);
  EXPECT_EQ(Ids(s.train), (std::vector<std::string>{"song0", "song1", "song2", "song3", "song4"}));
  EXPECT_EQ(Ids(s.val), (std::vector<std::string>{"song5", "song6"}));
  EXPECT_EQ(Ids(s.test), (std::vector<std::string>{"song7", "song8"}));
}

TEST(SplitDataset, EmptySplitIsAnError) {
  EXPECT_THROW(SplitDataset(Records(2), {}, 1), ValidationError);
  EXPECT_THROW(SplitDataset({}, {}, 1), ValidationError);
  EXPECT_NO_THROW(SplitDataset(Records(10), {}, 1));
}

}  // namespace
}  // namespace lukthung::data
