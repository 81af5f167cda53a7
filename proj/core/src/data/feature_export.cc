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

#include "lukthung/data/feature_export.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "lukthung/data/manifest.h"
#include "lukthung/errors.h"

namespace lukthung::data {
namespace {

std::string FormatProb(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", p);
  return buf;
}

std::string FormatFeature(float v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(v));
  return buf;
}

void WriteRowTail(std::ostream& out, const FeatureRow& r) {
  out << r.id << ',' << LabelName(static_cast<Label>(r.label)) << ',' << FormatProb(r.prob);
  for (float v : r.feature) out << ',' << FormatFeature(v);
  out << '\n';
}

void WriteHeaderTail(std::ostream& out, std::size_t width) {
  out << "id,label,prob";
  for (std::size_t i = 0; i < width; ++i) out << ',' << FeatureColumnName(i);
  out << '\n';
}

std::size_t CommonWidth(const std::vector<FeatureRow>& rows) {
  const std::size_t width = rows.empty() ? 0 : rows.front().feature.size();
  for (const auto& r : rows) {
    if (r.feature.size() != width) {
      throw ShapeError("feature rows differ in width: " + std::to_string(width) + " vs " +
                       std::to_string(r.feature.size()) + " (song " + r.id + ")");
    }
    if (r.id.find_first_of(",\n\"") != std::string::npos) {
      throw ValidationError("song id '" + r.id + "' cannot be written to CSV unquoted");
    }
  }
  return width;
}

std::vector<std::string_view> SplitComma(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename V>
V ParseNumber(std::string_view s, std::size_t line) {
  V v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw CorruptInputError("feature csv line " + std::to_string(line) + ": bad number '" +
                            std::string(s) + "'");
  }
  return v;
}

bool MoreConfident(const FeatureRow& a, const FeatureRow& b, bool descending) {
  if (a.prob != b.prob) return descending ? a.prob > b.prob : a.prob < b.prob;
  return a.id < b.id;
}

}  // namespace

std::string FeatureColumnName(std::size_t index) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "f%03zu", index);
  return buf;
}

void WriteFeatureCsv(std::ostream& out, const std::vector<FeatureRow>& rows) {
  WriteHeaderTail(out, CommonWidth(rows));
  for (const auto& r : rows) WriteRowTail(out, r);
}

std::string FeatureCsv(const std::vector<FeatureRow>& rows) {
  std::ostringstream out;
  WriteFeatureCsv(out, rows);
  return out.str();
}

std::vector<FeatureRow> ParseFeatureCsv(std::string_view text) {
  std::vector<FeatureRow> rows;
  std::size_t width = 0;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto fields = SplitComma(line);
    if (line_no == 1) {
      if (fields.size() < 3 || fields[0] != "id" || fields[1] != "label" || fields[2] != "prob") {
        throw UnsupportedFormatError("feature csv must start with id,label,prob");
      }
      width = fields.size() - 3;
      continue;
    }
    if (fields.size() != width + 3) {
      throw CorruptInputError("feature csv line " + std::to_string(line_no) + ": " +
                              std::to_string(fields.size()) + " columns, expected " +
                              std::to_string(width + 3));
    }
    FeatureRow r;
    r.id = std::string(fields[0]);
    r.label = LabelValue(ParseLabel(fields[1]));
    r.prob = ParseNumber<double>(fields[2], line_no);
    r.feature.reserve(width);
    for (std::size_t i = 0; i < width; ++i) {
      r.feature.push_back(ParseNumber<float>(fields[3 + i], line_no));
    }
    rows.push_back(std::move(r));
  }
  if (line_no == 0) throw CorruptInputError("feature csv is empty");
  return rows;
}

ConfidenceGroups SelectConfidenceGroups(const std::vector<FeatureRow>& rows, std::size_t k,
                                        double threshold) {
  ConfidenceGroups g;
  for (const auto& r : rows) {
    const bool predicted = r.prob >= threshold;
    if (r.label == 1) {
      (predicted ? g.tp : g.fn).push_back(r);
    } else {
      (predicted ? g.fp : g.tn).push_back(r);
    }
  }
  const auto take = [&](std::vector<FeatureRow>& group, bool descending, const char* name) {
    std::sort(group.begin(), group.end(), [descending](const auto& a, const auto& b) {
      return MoreConfident(a, b, descending);
    });
    if (group.size() < k) {
      g.incomplete = true;
      g.warnings.push_back(std::string(name) + ": only " + std::to_string(group.size()) +
                           " of " + std::to_string(k) + " requested");
    } else {
      group.resize(k);
    }
  };
  take(g.tp, true, "TP");
  take(g.fp, true, "FP");
  take(g.fn, false, "FN");
  take(g.tn, false, "TN");
  return g;
}

std::string ConfidenceGroupsCsv(const ConfidenceGroups& groups) {
  std::vector<FeatureRow> all;
  for (const auto* group : {&groups.tp, &groups.fp, &groups.fn, &groups.tn}) {
    all.insert(all.end(), group->begin(), group->end());
  }
  std::ostringstream out;
  out << "group,rank,";
  WriteHeaderTail(out, CommonWidth(all));
  const std::pair<const char*, const std::vector<FeatureRow>*> named[] = {
      {"TP", &groups.tp}, {"FP", &groups.fp}, {"FN", &groups.fn}, {"TN", &groups.tn}};
  for (const auto& [name, group] : named) {
    for (std::size_t i = 0; i < group->size(); ++i) {
      out << name << ',' << i + 1 << ',';
      WriteRowTail(out, (*group)[i]);
    }
  }
  return out.str();
}

}  // namespace lukthung::data
