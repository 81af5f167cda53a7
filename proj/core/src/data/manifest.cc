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

#include "lukthung/data/manifest.h"

#include <set>

#include "json.hpp"
#include "lukthung/errors.h"
#include "lukthung/nn/checkpoint.h"

namespace lukthung::data {
namespace {

using nlohmann::json;

std::string RequireString(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw ValidationError("manifest line " + std::to_string(line) + ": field '" + key +
                          "' missing or not a string");
  }
  return it->get<std::string>();
}

}  // namespace

std::string_view LabelName(Label label) {
  return label == Label::kLukthung ? "lukthung" : "other";
}

Label ParseLabel(std::string_view name) {
  if (name == "lukthung") return Label::kLukthung;
  if (name == "other") return Label::kOther;
  throw ValidationError("label '" + std::string(name) + "' is not lukthung or other");
}

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kVal:
      return "val";
    case Split::kTest:
      return "test";
  }
  return "unknown";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "val") return Split::kVal;
  if (name == "test") return Split::kTest;
  throw ValidationError("split '" + std::string(name) + "' is not train, val or test");
}

std::filesystem::path Manifest::Resolve(const std::string& path) const {
  const std::filesystem::path p(path);
  return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

std::vector<SongRecord> Manifest::WithSplit(Split split) const {
  std::vector<SongRecord> out;
  for (const auto& r : records) {
    if (r.split == split) out.push_back(r);
  }
  return out;
}

Manifest ParseManifest(std::string_view text, std::filesystem::path base_dir) {
  Manifest manifest;
  manifest.base_dir = std::move(base_dir);
  std::set<std::string> ids;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ValidationError("manifest line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!obj.is_object()) {
      throw ValidationError("manifest line " + std::to_string(line_no) +
                            ": expected a JSON object");
    }
    SongRecord r;
    r.id = RequireString(obj, "id", line_no);
    if (r.id.empty()) {
      throw ValidationError("manifest line " + std::to_string(line_no) + ": empty id");
    }
    r.audio_path = RequireString(obj, "audio_path", line_no);
    r.lyrics_path = RequireString(obj, "lyrics_path", line_no);
    try {
      r.label = ParseLabel(RequireString(obj, "label", line_no));
      if (obj.contains("genre")) r.genre = RequireString(obj, "genre", line_no);
      if (obj.contains("year")) {
        if (!obj["year"].is_number_integer()) {
          throw ValidationError("field 'year' is not an integer");
        }
        r.year = obj["year"].get<int>();
      }
      if (obj.contains("split") && !obj["split"].is_null()) {
        r.split = ParseSplit(RequireString(obj, "split", line_no));
      }
    } catch (const ValidationError& e) {
      const std::string msg = e.what();
      if (msg.rfind("manifest line", 0) == 0) throw;
      throw ValidationError("manifest line " + std::to_string(line_no) + ": " + msg);
    }
    if (!ids.insert(r.id).second) {
      throw ValidationError("manifest line " + std::to_string(line_no) +
                            ": duplicate id '" + r.id + "'");
    }
    manifest.records.push_back(std::move(r));
  }
  return manifest;
}

Manifest LoadManifest(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw MissingInputError("manifest " + path.string(), "pass --manifest or run gen-synth");
  }
  const auto bytes = nn::ReadFileBytes(path);
  return ParseManifest(std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                        bytes.size()),
                       path.parent_path());
}

std::string SerializeManifest(const std::vector<SongRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    // ordered_json keeps the field order stable and readable.
    nlohmann::ordered_json obj;
    obj["id"] = r.id;
    obj["audio_path"] = r.audio_path;
    obj["lyrics_path"] = r.lyrics_path;
    obj["label"] = LabelName(r.label);
    obj["genre"] = r.genre;
    obj["year"] = r.year;
    if (r.split) obj["split"] = SplitName(*r.split);
    out += obj.dump();
    out += '\n';
  }
  return out;
}

void SaveManifest(const std::filesystem::path& path, const std::vector<SongRecord>& records) {
  const std::string text = SerializeManifest(records);
  nn::WriteFileBytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                     text.size()));
}

}  // namespace lukthung::data
