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

#ifndef LUKTHUNG_LYRICS_BOW_H_
#define LUKTHUNG_LYRICS_BOW_H_

#include <cmath>
#include <string>
#include <vector>

#include "lukthung/lyrics/vocabulary.h"
#include "lukthung/nn/tensor.h"

namespace lukthung::lyrics {

// Log-normalized bag of words for one song.
struct BowVector {
  std::vector<double> values;  // length |V|, every entry in [0, 1]
  std::string song_id;

  nn::Tensor ToTensor() const;
};

// With c_j the in-vocabulary count of word j in `tokens`:
//
//   a_j = log(c_j) / max_k log(c_k)
//
// where words with c_j == 0 contribute 0. If no word occurs twice the
// denominator is zero and the vector falls back to the 0/1 presence
// indicator. Out-of-vocabulary tokens are ignored. `log_base` only exists to
// demonstrate that the ratio does not depend on it.
BowVector ComputeBow(const std::vector<std::string>& tokens,
                     const Vocabulary& vocab, std::string song_id = {},
                     double log_base = std::exp(1.0));

}  // namespace lukthung::lyrics

#endif  // LUKTHUNG_LYRICS_BOW_H_
