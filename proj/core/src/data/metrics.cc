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

#include "lukthung/data/metrics.h"

#include <string>

#include "lukthung/errors.h"

namespace lukthung::data {
namespace {

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double F1(std::size_t tp, std::size_t fp, std::size_t fn) {
  return Ratio(2 * tp, 2 * tp + fp + fn);
}

}  // namespace

double Metrics::accuracy() const { return Ratio(tp + tn, total()); }

Metrics MetricsFromCounts(std::size_t tp, std::size_t fp, std::size_t fn,
                          std::size_t tn) {
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.tn = tn;
  m.precision = Ratio(tp, tp + fp);
  m.recall = Ratio(tp, tp + fn);
  // 2PR/(P+R) written in counts, which is exact and 0 when tp == 0.
  m.f1_positive = F1(tp, fp, fn);
  m.f1_macro = 0.5 * (m.f1_positive + F1(tn, fn, fp));
  return m;
}

Metrics ComputeMetrics(std::span<const double> probs, std::span<const int> labels,
                       double threshold) {
  if (probs.size() != labels.size()) {
    throw ValidationError("metrics: " + std::to_string(probs.size()) +
                          " predictions but " + std::to_string(labels.size()) +
                          " labels");
  }
  if (probs.empty()) throw ValidationError("metrics: no predictions");
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw ValidationError("metrics: label " + std::to_string(labels[i]) +
                            " at index " + std::to_string(i) + " is not 0 or 1");
    }
    const bool predicted = probs[i] >= threshold;
    if (labels[i] == 1) {
      predicted ? ++tp : ++fn;
    } else {
      predicted ? ++fp : ++tn;
    }
  }
  return MetricsFromCounts(tp, fp, fn, tn);
}

}  // namespace lukthung::data
