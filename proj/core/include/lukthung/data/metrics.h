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

#ifndef LUKTHUNG_DATA_METRICS_H_
#define LUKTHUNG_DATA_METRICS_H_

#include <cstddef>
#include <span>

namespace lukthung::data {

// Binary classification metrics with the positive class = lukthung.
struct Metrics {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1_positive = 0.0;
  // Mean of the positive-class and negative-class F1.
  double f1_macro = 0.0;

  std::size_t total() const { return tp + fp + fn + tn; }
  double accuracy() const;
};

// Fills the derived fields from the four counts. Ratios with a zero
// denominator are 0.
Metrics MetricsFromCounts(std::size_t tp, std::size_t fp, std::size_t fn,
                          std::size_t tn);

// A prediction is positive when prob >= threshold. labels are 0 or 1.
Metrics ComputeMetrics(std::span<const double> probs, std::span<const int> labels,
                       double threshold = 0.5);

}  // namespace lukthung::data

#endif  // LUKTHUNG_DATA_METRICS_H_
