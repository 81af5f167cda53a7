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

#include <algorithm>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "gtest/gtest.h"
#include "lukthung/data/metrics.h"
#include "lukthung/errors.h"

namespace lukthung::data {
namespace {

// Independent route: tally (predicted, actual) pairs in a map, then use the
// textbook precision/recall/harmonic-mean formulas.
struct OracleMetrics {
  std::map<std::pair<int, int>, std::size_t> counts;
  double precision = 0, recall = 0, f1 = 0, f1_negative = 0;
};

double HarmonicMean(double a, double b) { return a + b == 0 ? 0.0 : 2 * a * b / (a + b); }

OracleMetrics Oracle(const std::vector<double>& probs, const std::vector<int>& labels,
                     double threshold) {
  OracleMetrics o;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    ++o.counts[{probs[i] >= threshold ? 1 : 0, labels[i]}];
  }
  const double tp = o.counts[{1, 1}], fp = o.counts[{1, 0}];
  const double fn = o.counts[{0, 1}], tn = o.counts[{0, 0}];
  o.precision = tp + fp == 0 ? 0 : tp / (tp + fp);
  o.recall = tp + fn == 0 ? 0 : tp / (tp + fn);
  o.f1 = HarmonicMean(o.precision, o.recall);
  const double np = tn + fn == 0 ? 0 : tn / (tn + fn);
  const double nr = tn + fp == 0 ? 0 : tn / (tn + fp);
  o.f1_negative = HarmonicMean(np, nr);
  return o;
}

TEST(Metrics, AllCorrect) {
  const std::vector<double> p = {0.9, 0.8, 0.1, 0.2};
  const std::vector<int> y = {1, 1, 0, 0};
  const Metrics m = ComputeMetrics(p, y);
  EXPECT_EQ(m.precision, 1.0);
  EXPECT_EQ(m.recall, 1.0);
  EXPECT_EQ(m.f1_positive, 1.0);
  EXPECT_EQ(m.f1_macro, 1.0);
  EXPECT_EQ(m.accuracy(), 1.0);
}

TEST(Metrics, HandHarmonicMean) {
  // tp = 1, fp = 1, fn = 0.
  const std::vector<double> p = {0.7, 0.6, 0.3};
  const std::vector<int> y = {1, 0, 0};
  const Metrics m = ComputeMetrics(p, y);
  EXPECT_EQ(m.tp, 1u);
  EXPECT_EQ(m.fp, 1u);
  EXPECT_EQ(m.fn, 0u);
  EXPECT_EQ(m.tn, 1u);
  EXPECT_DOUBLE_EQ(m.precision, 0.5);
  EXPECT_DOUBLE_EQ(m.recall, 1.0);
  EXPECT_DOUBLE_EQ(m.f1_positive, 2.0 / 3.0);
  // Negative class: precision 1, recall 0.5.
  EXPECT_DOUBLE_EQ(m.f1_macro, 0.5 * (2.0 / 3.0 + 2.0 / 3.0));
}

TEST(Metrics, ThresholdIsInclusive) {
  const std::vector<double> p = {0.5};
  const std::vector<int> y = {1};
  EXPECT_EQ(ComputeMetrics(p, y).tp, 1u);
  EXPECT_EQ(ComputeMetrics(p, y, 0.51).fn, 1u);
}

TEST(Metrics, ZeroDenominatorsGiveZero) {
  const Metrics m = MetricsFromCounts(0, 0, 0, 5);
  EXPECT_EQ(m.precision, 0.0);
  EXPECT_EQ(m.recall, 0.0);
  EXPECT_EQ(m.f1_positive, 0.0);
  EXPECT_EQ(m.f1_macro, 0.5);
}

TEST(Metrics, Errors) {
  const std::vector<double> p = {0.5, 0.2};
  const std::vector<int> one = {1};
  EXPECT_THROW(ComputeMetrics(p, one), ValidationError);
  EXPECT_THROW(ComputeMetrics({}, {}), ValidationError);
  const std::vector<int> bad = {1, 2};
  EXPECT_THROW(ComputeMetrics(p, bad), ValidationError);
}

TEST(Metrics, MatchesBruteForceOnRandomCases) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int c = 0; c < 1000; ++c) {
    const std::size_t n = 1 + rng() % 200;
    const double threshold = c % 3 == 0 ? 0.5 : unit(rng);
    // Vary class balance and skill so degenerate cases also occur.
    const double pos_rate = unit(rng);
    std::vector<double> p(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = unit(rng) < pos_rate ? 1 : 0;
      p[i] = c % 7 == 0 ? std::round(unit(rng) * 4) / 4 : unit(rng);
    }
    const Metrics m = ComputeMetrics(p, y, threshold);
    OracleMetrics o = Oracle(p, y, threshold);
    ASSERT_EQ(m.tp, (o.counts[{1, 1}])) << "case " << c;
    ASSERT_EQ(m.fp, (o.counts[{1, 0}])) << "case " << c;
    ASSERT_EQ(m.fn, (o.counts[{0, 1}])) << "case " << c;
    ASSERT_EQ(m.tn, (o.counts[{0, 0}])) << "case " << c;
    ASSERT_EQ(m.total(), n);
    ASSERT_NEAR(m.precision, o.precision, 1e-12) << "case " << c;
    ASSERT_NEAR(m.recall, o.recall, 1e-12) << "case " << c;
    ASSERT_NEAR(m.f1_positive, o.f1, 1e-12) << "case " << c;
    ASSERT_NEAR(m.f1_macro, 0.5 * (o.f1 + o.f1_negative), 1e-12) << "case " << c;
    for (double v : {m.precision, m.recall, m.f1_positive, m.f1_macro}) {
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
  }
}

TEST(Metrics, PermutationInvariant) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int c = 0; c < 100; ++c) {
    const std::size_t n = 1 + rng() % 100;
    std::vector<std::pair<double, int>> pairs(n);
    for (auto& [p, y] : pairs) {
      p = unit(rng);
      y = static_cast<int>(rng() % 2);
    }
    const auto metrics_of = [](const std::vector<std::pair<double, int>>& v) {
      std::vector<double> p;
      std::vector<int> y;
      for (const auto& [a, b] : v) {
        p.push_back(a);
        y.push_back(b);
      }
      return ComputeMetrics(p, y);
    };
    const Metrics before = metrics_of(pairs);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    const Metrics after = metrics_of(pairs);
    EXPECT_EQ(before.tp, after.tp);
    EXPECT_EQ(before.fp, after.fp);
    EXPECT_EQ(before.fn, after.fn);
    EXPECT_EQ(before.tn, after.tn);
    EXPECT_EQ(before.precision, after.precision);
    EXPECT_EQ(before.recall, after.recall);
    EXPECT_EQ(before.f1_positive, after.f1_positive);
    EXPECT_EQ(before.f1_macro, after.f1_macro);
  }
}

TEST(Metrics, F1IsOneExactlyWhenNoErrors) {
  for (std::size_t tp = 0; tp < 6; ++tp) {
    for (std::size_t fp = 0; fp < 6; ++fp) {
      for (std::size_t fn = 0; fn < 6; ++fn) {
        const Metrics m = MetricsFromCounts(tp, fp, fn, 3);
        EXPECT_LE(m.f1_positive, 1.0);
        EXPECT_EQ(m.f1_positive == 1.0, fp == 0 && fn == 0 && tp > 0)
            << tp << " " << fp << " " << fn;
      }
    }
  }
}

}  // namespace
}  // namespace lukthung::data
