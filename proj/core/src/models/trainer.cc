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

#include "lukthung/models/trainer.h"

namespace lukthung::models {

double AutoPosWeight(const std::vector<int>& labels) {
  const auto pos = std::count(labels.begin(), labels.end(), 1);
  const auto neg = static_cast<std::ptrdiff_t>(labels.size()) - pos;
  if (pos == 0 || neg == 0) {
    throw ValidationError("training split needs both classes (" + std::to_string(pos) +
                          " positive, " + std::to_string(neg) + " negative)");
  }
  return static_cast<double>(neg) / static_cast<double>(pos);
}

}  // namespace lukthung::models
