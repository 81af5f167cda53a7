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

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "lukthung/lyrics/bow.h"
#include "lukthung/lyrics/tokenizer.h"
#include "lukthung/lyrics/vocabulary.h"

namespace {

// Zipf-like token draws over `distinct` words.
std::vector<std::string> Song(std::size_t length, std::size_t distinct, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, distinct - 1);
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < length; ++i) {
    tokens.push_back("w" + std::to_string(std::min(pick(rng), pick(rng))));
  }
  return tokens;
}

void BM_ComputeBow(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<std::vector<std::string>> corpus;
  for (int i = 0; i < 2000; ++i) corpus.push_back(Song(200, 6000, rng));
  const auto vocab = lukthung::lyrics::Vocabulary::Build(corpus);
  const auto song = Song(static_cast<std::size_t>(state.range(0)), 6000, rng);
  for (auto _ : state) benchmark::DoNotOptimize(lukthung::lyrics::ComputeBow(song, vocab));
  state.counters["vocab"] = static_cast<double>(vocab.size());
}
BENCHMARK(BM_ComputeBow)->Arg(200)->Arg(2000);

void BM_TokenizePretokenized(benchmark::State& state) {
  std::string text;
  for (int i = 0; i < 400; ++i) text += (i % 8 == 7 ? "\n" : "|") + std::string("คำ") + std::to_string(i);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        lukthung::lyrics::Tokenize(text, lukthung::lyrics::TokenizeMode::kPretokenized));
  }
}
BENCHMARK(BM_TokenizePretokenized);

}  // namespace
