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

#include "run_config.h"

#include <cstdlib>
#include <string>

#include "gtest/gtest.h"
#include "lukthung/errors.h"

namespace lukthung::cli {
namespace {

std::string ParseError(const std::string& text) {
  try {
    ParseRunConfig(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(RunConfigTest, ParsesValuesAndComments) {
  const RunConfig c = ParseRunConfig(
      "# comment\n"
      "seed = 7\n"
      "lr=0.01   # trailing\n"
      "\n"
      "tokenize_mode = whitespace\n"
      "n_mels = 64\n"
      "split_train = 0.6\n");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_DOUBLE_EQ(c.lr, 0.01);
  EXPECT_EQ(c.tokenize_mode, lyrics::TokenizeMode::kWhitespace);
  EXPECT_EQ(c.spectrogram.n_mels, 64);
  EXPECT_DOUBLE_EQ(c.split.train, 0.6);
}

TEST(RunConfigTest, ErrorsCarryLineNumbers) {
  EXPECT_NE(ParseError("seed = 1\nbogus = 2\n").find("config line 2: unknown config key 'bogus'"),
            std::string::npos);
  EXPECT_NE(ParseError("seed = 1\n\nseed = 2\n").find("config line 3: key 'seed' set twice"),
            std::string::npos);
  EXPECT_NE(ParseError("# x\nlr\n").find("config line 2: expected key = value"),
            std::string::npos);
  const std::string bad_number = ParseError("batch_size = many\n");
  EXPECT_NE(bad_number.find("config line 1:"), std::string::npos);
  EXPECT_NE(bad_number.find("batch_size"), std::string::npos);
  EXPECT_NE(ParseError("tokenize_mode = thai\n").find("config line 1:"), std::string::npos);
}

TEST(RunConfigTest, ValidateRejectsOutOfRangeValues) {
  RunConfig c;
  c.Validate();
  c.threshold = 1.5;
  EXPECT_THROW(c.Validate(), ValidationError);
  c = RunConfig{};
  c.batch_size = 0;
  EXPECT_THROW(c.Validate(), ValidationError);
  c = RunConfig{};
  c.split.train = 0.9;
  EXPECT_THROW(c.Validate(), ValidationError);
}

TEST(RunConfigTest, HashIgnoresLocationsOnly) {
  const RunConfig base;
  RunConfig moved = base;
  moved.manifest = "/elsewhere/manifest.jsonl";
  moved.artifacts_dir = "/tmp/other";
  moved.cache_dir = "/tmp/cache";
  moved.workers = 3;
  EXPECT_EQ(moved.HashHex(), base.HashHex());
  for (const char* line : {"seed = 43", "lr = 0.002", "n_mels = 96", "threshold = 0.4",
                           "vocab_min_count = 3", "tokenize_mode = whitespace"}) {
    EXPECT_NE(ParseRunConfig(line).HashHex(), base.HashHex()) << line;
  }
}

TEST(RunConfigTest, DefaultTextRoundTrips) {
  const RunConfig parsed = ParseRunConfig(DefaultConfigText());
  EXPECT_EQ(parsed.Canonical(), RunConfig{}.Canonical());
  EXPECT_EQ(parsed.Entries(), RunConfig{}.Entries());
}

TEST(RunConfigTest, EntriesRoundTripThroughSet) {
  RunConfig c = ParseRunConfig("lr = 0.0003\nclip_seconds = 2.5\nseed = 11\n");
  RunConfig copy;
  for (const auto& [key, value] : c.Entries()) SetConfigValue(copy, key, value);
  EXPECT_EQ(copy.Entries(), c.Entries());
  EXPECT_EQ(copy.HashHex(), c.HashHex());
}

TEST(RunConfigTest, DerivedPaths) {
  RunConfig c;
  c.artifacts_dir = "art";
  EXPECT_EQ(c.VocabPath(), std::filesystem::path("art") / "vocab.tsv");
  EXPECT_EQ(c.CheckpointDir(), std::filesystem::path("art") / "checkpoints");
  c.vocab = "v.tsv";
  EXPECT_EQ(c.VocabPath(), std::filesystem::path("v.tsv"));
  ::setenv("LT_CACHE_DIR", "/tmp/lt-cache", 1);
  EXPECT_EQ(c.CacheDir(), std::filesystem::path("/tmp/lt-cache"));
  ::unsetenv("LT_CACHE_DIR");
  EXPECT_EQ(c.CacheDir(), std::filesystem::path("art") / "cache");
}

TEST(RunConfigTest, CnnEpochBudget) {
  RunConfig c;
  c.max_epochs = 40;
  EXPECT_EQ(c.Training(false).max_epochs, 40u);
  EXPECT_EQ(c.Training(true).max_epochs, 40u);
  c.cnn_max_epochs = 3;
  EXPECT_EQ(c.Training(false).max_epochs, 40u);
  EXPECT_EQ(c.Training(true).max_epochs, 3u);
}

}  // namespace
}  // namespace lukthung::cli
