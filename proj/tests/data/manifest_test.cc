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

#include <filesystem>
#include <string>

#include "gtest/gtest.h"
#include "lukthung/data/manifest.h"
#include "lukthung/errors.h"
#include "test_util.h"

namespace lukthung::data {
namespace {

using ::lukthung::testing::TempDir;

std::string ErrorOf(const std::string& text) {
  try {
    ParseManifest(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(Manifest, ParsesAllFields) {
  const Manifest m = ParseManifest(
      R"({"id":"s1","audio_path":"a/s1.wav","lyrics_path":"l/s1.txt","label":"lukthung","genre":"lukthung","year":1995,"split":"train"})"
      "\n\n"
      R"({"id":"s2","audio_path":"/abs/s2.wav","lyrics_path":"l/s2.txt","label":"other","split":null})"
      "\n",
      "/data");
  ASSERT_EQ(m.records.size(), 2u);
  const SongRecord& a = m.records[0];
  EXPECT_EQ(a.id, "s1");
  EXPECT_EQ(a.label, Label::kLukthung);
  EXPECT_EQ(a.genre, "lukthung");
  EXPECT_EQ(a.year, 1995);
  EXPECT_EQ(a.split, Split::kTrain);
  const SongRecord& b = m.records[1];
  EXPECT_EQ(b.label, Label::kOther);
  EXPECT_FALSE(b.split.has_value());
  EXPECT_EQ(b.year, 0);
  EXPECT_EQ(m.Resolve(a.audio_path), std::filesystem::path("/data/a/s1.wav"));
  EXPECT_EQ(m.Resolve(b.audio_path), std::filesystem::path("/abs/s2.wav"));
  EXPECT_EQ(m.WithSplit(Split::kTrain).size(), 1u);
  EXPECT_TRUE(m.WithSplit(Split::kTest).empty());
}

TEST(Manifest, SerializeRoundTrip) {
  std::vector<SongRecord> records(3);
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].id = "id\"" + std::to_string(i);
    records[i].audio_path = "audio/" + std::to_string(i) + ".wav";
    records[i].lyrics_path = "lyrics/เพลง" + std::to_string(i) + ".txt";
    records[i].label = i == 1 ? Label::kLukthung : Label::kOther;
    records[i].genre = "pop";
    records[i].year = 1980 + static_cast<int>(i);
  }
  records[0].split = Split::kVal;
  records[2].split = Split::kTest;
  const std::string text = SerializeManifest(records);
  EXPECT_EQ(ParseManifest(text).records, records);
  EXPECT_EQ(SerializeManifest(ParseManifest(text).records), text);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}

TEST(Manifest, FileRoundTripResolvesAgainstItsDirectory) {
  TempDir dir("manifest");
  std::vector<SongRecord> records(1);
  records[0].id = "x";
  records[0].audio_path = "a.wav";
  records[0].lyrics_path = "a.txt";
  SaveManifest(dir.path() / "m.jsonl", records);
  const Manifest m = LoadManifest(dir.path() / "m.jsonl");
  EXPECT_EQ(m.records, records);
  EXPECT_EQ(m.Resolve("a.wav"), dir.path() / "a.wav");
  EXPECT_THROW(LoadManifest(dir.path() / "none.jsonl"), MissingInputError);
}

TEST(Manifest, ErrorsNameTheLine) {
  const std::string good =
      R"({"id":"a","audio_path":"x","lyrics_path":"y","label":"other"})";
  EXPECT_NE(ErrorOf(good + "\n" + good).find("line 2: duplicate id 'a'"), std::string::npos);
  EXPECT_NE(ErrorOf("\n{not json").find("line 2"), std::string::npos);
  EXPECT_NE(ErrorOf("[1,2]").find("line 1: expected a JSON object"), std::string::npos);
  EXPECT_NE(ErrorOf(R"({"id":"a","audio_path":"x","label":"other"})").find("'lyrics_path'"),
            std::string::npos);
  EXPECT_NE(ErrorOf(good + "\n" +
                    R"({"id":"b","audio_path":"x","lyrics_path":"y","label":"rock"})")
                .find("line 2: label 'rock'"),
            std::string::npos);
  EXPECT_NE(
      ErrorOf(R"({"id":"b","audio_path":"x","lyrics_path":"y","label":"other","split":"dev"})")
          .find("split 'dev'"),
      std::string::npos);
  EXPECT_NE(
      ErrorOf(R"({"id":"b","audio_path":"x","lyrics_path":"y","label":"other","year":"1990"})")
          .find("'year'"),
      std::string::npos);
  EXPECT_NE(ErrorOf(R"({"id":"","audio_path":"x","lyrics_path":"y","label":"other"})")
                .find("empty id"),
            std::string::npos);
}

TEST(Manifest, NamesRoundTrip) {
  for (Label l : {Label::kOther, Label::kLukthung}) EXPECT_EQ(ParseLabel(LabelName(l)), l);
  for (Split s : {Split::kTrain, Split::kVal, Split::kTest}) {
    EXPECT_EQ(ParseSplit(SplitName(s)), s);
  }
  EXPECT_EQ(LabelValue(Label::kLukthung), 1);
  EXPECT_EQ(LabelValue(Label::kOther), 0);
}

}  // namespace
}  // namespace lukthung::data
