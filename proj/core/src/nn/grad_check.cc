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

#include "lukthung/nn/grad_check.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace lukthung::nn {

GradCheckReport GradCheck(const ParameterList<double>& params,
                          const std::function<double()>& loss,
                          const std::function<void()>& compute_grads,
                          const GradCheckOptions& options) {
  ZeroGrads(params);
  compute_grads();
  std::vector<TensorD> analytic;
  analytic.reserve(params.size());
  for (const auto* p : params) {
    if (!p->grad.AllFinite()) {
      throw NumericError("non-finite analytic gradient for parameter " +
                         p->name);
    }
    analytic.push_back(p->grad);
  }

  std::mt19937_64 rng(options.seed);
  GradCheckReport report;
  for (std::size_t pi = 0; pi < params.size(); ++pi) {
    auto* p = params[pi];
    std::vector<std::size_t> entries(p->value.size());
    std::iota(entries.begin(), entries.end(), std::size_t{0});
    if (options.max_entries_per_param != 0 &&
        entries.size() > options.max_entries_per_param) {
      std::shuffle(entries.begin(), entries.end(), rng);
      entries.resize(options.max_entries_per_param);
    }
    for (std::size_t idx : entries) {
      double& w = p->value[idx];
      const double saved = w;
      w = saved + options.step;
      const double up = loss();
      w = saved - options.step;
      const double down = loss();
      w = saved;
      const double numeric = (up - down) / (2.0 * options.step);
      const double err = std::abs(analytic[pi][idx] - numeric) /
                         std::max(1.0, std::abs(numeric));
      ++report.entries_checked;
      if (report.worst_parameter.empty() || err > report.max_relative_error) {
        report.max_relative_error = err;
        report.worst_parameter = p->name + "[" + std::to_string(idx) + "]";
      }
    }
  }
  return report;
}

}  // namespace lukthung::nn
