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

#ifndef LUKTHUNG_NN_GRAD_CHECK_H_
#define LUKTHUNG_NN_GRAD_CHECK_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "lukthung/nn/parameter.h"

namespace lukthung::nn {

struct GradCheckOptions {
  double step = 1e-5;
  // 0 checks every entry; otherwise a seeded sample of this many entries per
  // parameter tensor.
  std::size_t max_entries_per_param = 0;
  std::uint64_t seed = 1;
};

struct GradCheckReport {
  double max_relative_error = 0.0;
  std::string worst_parameter;
  std::size_t entries_checked = 0;

  bool Passed(double tolerance) const { return max_relative_error < tolerance; }
};

// Compares analytic gradients with central differences in double precision.
//
// `loss` evaluates the scalar loss at the current parameter values.
// `compute_grads` must fill every parameter's grad with d(loss)/d(param); the
// checker zeroes grads before calling it. The error for one entry is
// |analytic - numeric| / max(1, |numeric|) and the report holds the maximum.
// Throws NumericError naming the parameter if an analytic gradient is not
// finite.
GradCheckReport GradCheck(const ParameterList<double>& params,
                          const std::function<double()>& loss,
                          const std::function<void()>& compute_grads,
                          const GradCheckOptions& options = {});

}  // namespace lukthung::nn

#endif  // LUKTHUNG_NN_GRAD_CHECK_H_
