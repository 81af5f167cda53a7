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

#ifndef LUKTHUNG_DATA_FEATURE_EXPORT_H_
#define LUKTHUNG_DATA_FEATURE_EXPORT_H_

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace lukthung::data {

// One song's penultimate-layer representation and prediction.
struct FeatureRow {
  std::string id;
  int label = 0;  // 1 = lukthung
  double prob = 0.0;
  std::vector<float> feature;
};

// Header "id,label,prob,f000,...". Labels are written as lukthung/other and
// probabilities with 17 significant digits. All rows must share one width.
void WriteFeatureCsv(std::ostream& out, const std::vector<FeatureRow>& rows);
std::string FeatureCsv(const std::vector<FeatureRow>& rows);
std::vector<FeatureRow> ParseFeatureCsv(std::string_view text);

std::string FeatureColumnName(std::size_t index);

struct ConfidenceGroups {
  std::vector<FeatureRow> tp;  // most confident first: prob descending
  std::vector<FeatureRow> fp;  // prob descending
  std::vector<FeatureRow> fn;  // prob ascending
  std::vector<FeatureRow> tn;  // prob ascending
  // True when some category had fewer than k members; warnings say which.
  bool incomplete = false;
  std::vector<std::string> warnings;
};

// The k most confident songs of each confusion category. Ties in prob are
// broken by id so the selection is deterministic.
ConfidenceGroups SelectConfidenceGroups(const std::vector<FeatureRow>& rows, std::size_t k,
                                        double threshold = 0.5);

// "group,rank,id,label,prob,f000,..." with groups in TP, FP, FN, TN order.
std::string ConfidenceGroupsCsv(const ConfidenceGroups& groups);

}  // namespace lukthung::data

#endif  // LUKTHUNG_DATA_FEATURE_EXPORT_H_
