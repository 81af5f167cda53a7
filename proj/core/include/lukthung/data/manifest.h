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

#ifndef LUKTHUNG_DATA_MANIFEST_H_
#define LUKTHUNG_DATA_MANIFEST_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lukthung::data {

enum class Label { kOther = 0, kLukthung = 1 };
enum class Split { kTrain, kVal, kTest };

std::string_view LabelName(Label label);
Label ParseLabel(std::string_view name);
inline int LabelValue(Label label) { return static_cast<int>(label); }

std::string_view SplitName(Split split);
Split ParseSplit(std::string_view name);

struct SongRecord {
  std::string id;
  std::string audio_path;   // relative paths resolve against the manifest
  std::string lyrics_path;  // one UTF-8 lyrics file
  Label label = Label::kOther;
  std::string genre;
  int year = 0;
  std::optional<Split> split;

  friend bool operator==(const SongRecord&, const SongRecord&) = default;
};

// One JSON object per line:
//   {"id":"s1","audio_path":"a/s1.wav","lyrics_path":"l/s1.txt",
//    "label":"lukthung","genre":"lukthung","year":1995,"split":"train"}
// "split" may be absent or null. Blank lines are skipped.
struct Manifest {
  std::vector<SongRecord> records;
  std::filesystem::path base_dir;

  std::filesystem::path Resolve(const std::string& path) const;
  std::vector<SongRecord> WithSplit(Split split) const;
};

// Errors name the 1-based line. Duplicate ids are a ValidationError.
Manifest ParseManifest(std::string_view text, std::filesystem::path base_dir = {});
Manifest LoadManifest(const std::filesystem::path& path);
std::string SerializeManifest(const std::vector<SongRecord>& records);
void SaveManifest(const std::filesystem::path& path, const std::vector<SongRecord>& records);

}  // namespace lukthung::data

#endif  // LUKTHUNG_DATA_MANIFEST_H_
