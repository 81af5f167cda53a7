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

#include "lukthung/models/filter_bank.h"

#include "lukthung/errors.h"

namespace lukthung::models {
namespace {

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos
                                           ? std::string_view::npos
                                           : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::size_t ParsePositive(std::string_view s, std::string_view context) {
  std::size_t v = 0;
  if (s.empty()) throw ValidationError("empty number in filter bank '" + std::string(context) + "'");
  for (char c : s) {
    if (c < '0' || c > '9') {
      throw ValidationError("malformed filter bank entry '" + std::string(context) + "'");
    }
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  if (v == 0) throw ValidationError("zero dimension in filter bank '" + std::string(context) + "'");
  return v;
}

}  // namespace

FilterBankSpec FilterBankSpec::Default() {
  using K = FilterKind;
  return {{
      {K::kTimbral, 115, 7, 32},
      {K::kTimbral, 115, 3, 64},
      {K::kTimbral, 115, 1, 128},
      {K::kTimbral, 51, 7, 32},
      {K::kTimbral, 51, 3, 64},
      {K::kTimbral, 51, 1, 128},
      {K::kTemporal, 7, 32, 32},
      {K::kTemporal, 7, 64, 32},
      {K::kTemporal, 7, 128, 32},
      {K::kTemporal, 7, 165, 32},
  }};
}

std::size_t FilterBankSpec::ChannelsOf(FilterKind kind) const {
  std::size_t n = 0;
  for (const auto& g : groups) {
    if (g.kind == kind) n += g.n_filters;
  }
  return n;
}

std::size_t FilterBankSpec::total_channels() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.n_filters;
  return n;
}

std::string FilterBankSpec::ToString() const {
  std::string timbral, temporal;
  for (const auto& g : groups) {
    std::string& dst = g.kind == FilterKind::kTimbral ? timbral : temporal;
    if (!dst.empty()) dst += ",";
    dst += std::to_string(g.freq_bins) + "x" + std::to_string(g.time_units) + "x" +
           std::to_string(g.n_filters);
  }
  // Groups are listed timbral first; Parse restores that order.
  return "timbral:" + timbral + ";temporal:" + temporal;
}

FilterBankSpec FilterBankSpec::Parse(std::string_view text) {
  FilterBankSpec spec;
  for (std::string_view section : Split(text, ';')) {
    const auto colon = section.find(':');
    if (colon == std::string_view::npos) {
      throw ValidationError("filter bank section lacks ':' in '" + std::string(text) + "'");
    }
    const std::string_view kind_name = section.substr(0, colon);
    FilterKind kind;
    if (kind_name == "timbral") {
      kind = FilterKind::kTimbral;
    } else if (kind_name == "temporal") {
      kind = FilterKind::kTemporal;
    } else {
      throw ValidationError("unknown filter kind '" + std::string(kind_name) + "'");
    }
    const std::string_view body = section.substr(colon + 1);
    if (body.empty()) continue;
    for (std::string_view entry : Split(body, ',')) {
      const auto dims = Split(entry, 'x');
      if (dims.size() != 3) {
        throw ValidationError("filter bank entry '" + std::string(entry) +
                              "' is not FREQxTIMExCOUNT");
      }
      spec.groups.push_back({kind, ParsePositive(dims[0], entry),
                             ParsePositive(dims[1], entry),
                             ParsePositive(dims[2], entry)});
    }
  }
  if (spec.groups.empty()) throw ValidationError("filter bank has no groups");
  return spec;
}

}  // namespace lukthung::models
