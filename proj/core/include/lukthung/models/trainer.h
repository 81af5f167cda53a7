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

#ifndef LUKTHUNG_MODELS_TRAINER_H_
#define LUKTHUNG_MODELS_TRAINER_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "lukthung/data/metrics.h"
#include "lukthung/errors.h"
#include "lukthung/nn/adam.h"
#include "lukthung/nn/ops.h"
#include "lukthung/parallel.h"

namespace lukthung::models {

// Inputs with 0/1 labels (1 = lukthung).
template <typename Input>
struct LabeledSet {
  std::vector<Input> inputs;
  std::vector<int> labels;

  std::size_t size() const { return inputs.size(); }
};

struct TrainConfig {
  nn::AdamConfig adam;
  std::size_t batch_size = 32;
  std::size_t max_epochs = 100;
  std::size_t patience = 10;
  // Weight on the positive-class loss term; 0 means N_neg / N_pos of the
  // training set.
  double pos_weight = 0.0;
  std::uint64_t seed = 42;
  double threshold = 0.5;
  // Threads for gradient accumulation and validation. Results do not depend
  // on it.
  std::size_t workers = 1;
};

// Samples per gradient chunk. A batch is split into fixed chunks whose
// gradients are summed in chunk order, so the result is independent of the
// number of workers.
inline constexpr std::size_t kGradChunk = 4;

struct EpochLog {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_loss = 0.0;
  double val_f1 = 0.0;
  bool improved = false;
};

struct TrainResult {
  std::size_t best_epoch = 0;
  double best_val_f1 = 0.0;
  double best_val_loss = 0.0;
  double pos_weight = 1.0;
  std::size_t steps = 0;
  std::vector<EpochLog> history;
};

double AutoPosWeight(const std::vector<int>& labels);

template <typename Model, typename Input>
std::vector<double> PredictAll(const Model& model, const std::vector<Input>& inputs) {
  std::vector<double> probs;
  probs.reserve(inputs.size());
  for (const Input& x : inputs) probs.push_back(model.Forward(x).prob);
  return probs;
}

namespace internal {

template <typename Input>
void CheckSet(const LabeledSet<Input>& set, const char* what) {
  if (set.inputs.empty()) throw ValidationError(std::string(what) + " split is empty");
  if (set.inputs.size() != set.labels.size()) {
    throw ValidationError(std::string(what) + " split has " +
                          std::to_string(set.inputs.size()) + " inputs but " +
                          std::to_string(set.labels.size()) + " labels");
  }
}

// Mean weighted BCE over the set, computed from the unclamped-sigmoid
// probability the model returns.
template <typename Model, typename Input>
double MeanLoss(const Model& model, const LabeledSet<Input>& set, double pos_weight,
                std::vector<double>* probs = nullptr, std::size_t workers = 1) {
  std::vector<double> p(set.size());
  ParallelFor(set.size(), workers,
              [&](std::size_t i) { p[i] = model.Forward(set.inputs[i]).prob; });
  double total = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    total += nn::BceLoss(p[i], set.labels[i], pos_weight);
  }
  if (probs != nullptr) probs->insert(probs->end(), p.begin(), p.end());
  return total / static_cast<double>(set.size());
}

// Adds the gradient of the summed loss over order[begin, end), scaled by
// 1 / (end - begin), to the model's grads and returns the summed loss. Chunks
// of kGradChunk samples run on replicas of the model in waves of `workers`;
// each wave is folded into the model in chunk order.
template <typename Model, typename Input>
double AccumulateBatch(Model& model, const LabeledSet<Input>& set,
                       const std::vector<std::size_t>& order, std::size_t begin,
                       std::size_t end, double pos_weight, std::size_t workers = 1) {
  using T = decltype(model.Forward(set.inputs[0]).logit);
  const double scale = 1.0 / static_cast<double>(end - begin);
  const std::size_t chunks = (end - begin + kGradChunk - 1) / kGradChunk;
  workers = std::clamp<std::size_t>(workers, 1, chunks);
  std::vector<Model> replicas(workers, model);
  std::vector<double> losses(workers);
  auto params = model.Parameters();
  double loss = 0.0;
  for (std::size_t wave = 0; wave < chunks; wave += workers) {
    const std::size_t n = std::min(workers, chunks - wave);
    ParallelFor(n, n, [&](std::size_t r) {
      Model& replica = replicas[r];
      nn::ZeroGrads(replica.Parameters());
      const std::size_t lo = begin + (wave + r) * kGradChunk;
      const std::size_t hi = std::min(end, lo + kGradChunk);
      typename Model::Cache cache;
      double chunk_loss = 0.0;
      for (std::size_t k = lo; k < hi; ++k) {
        const std::size_t i = order[k];
        const auto out = replica.Forward(set.inputs[i], &cache);
        chunk_loss += nn::BceLoss(out.prob, set.labels[i], pos_weight);
        const double dlogit =
            nn::BceLogitGrad(static_cast<double>(out.logit), set.labels[i], pos_weight);
        replica.Backward(cache, static_cast<T>(dlogit * scale));
      }
      losses[r] = chunk_loss;
    });
    for (std::size_t r = 0; r < n; ++r) {
      const auto rparams = replicas[r].Parameters();
      for (std::size_t j = 0; j < params.size(); ++j) {
        const auto g = params[j]->grad.values();
        const auto rg = rparams[j]->grad.values();
        for (std::size_t e = 0; e < g.size(); ++e) g[e] += rg[e];
      }
      loss += losses[r];
    }
  }
  return loss;
}

template <typename Params>
auto SnapshotValues(const Params& params) {
  std::vector<std::remove_cvref_t<decltype(params[0]->value)>> values;
  values.reserve(params.size());
  for (const auto* p : params) values.push_back(p->value);
  return values;
}

}  // namespace internal

// Minibatch Adam on weighted BCE with a seeded per-epoch shuffle. The
// validation F1 (positive class) is measured after every epoch; the
// parameters of the best epoch are restored on return. An epoch counts as an
// improvement when its F1 is higher, or equal with a lower validation loss.
// Training stops after `patience` epochs without improvement or at
// max_epochs.
template <typename Model, typename Input>
TrainResult Train(Model& model, const LabeledSet<Input>& train,
                  const LabeledSet<Input>& val, const TrainConfig& config,
                  const std::function<void(const EpochLog&)>& on_epoch = {}) {
  internal::CheckSet(train, "training");
  internal::CheckSet(val, "validation");
  if (config.batch_size == 0) throw ValidationError("batch_size must be positive");
  if (config.max_epochs == 0) throw ValidationError("max_epochs must be positive");

  TrainResult result;
  result.pos_weight =
      config.pos_weight > 0.0 ? config.pos_weight : AutoPosWeight(train.labels);

  auto params = model.Parameters();
  nn::Adam adam(params, config.adam);
  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  auto best = internal::SnapshotValues(params);
  bool have_best = false;
  std::size_t since_best = 0;
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const std::size_t end = std::min(order.size(), begin + config.batch_size);
      adam.ZeroGrad();
      const double loss =
          internal::AccumulateBatch(model, train, order, begin, end, result.pos_weight,
                                    config.workers);
      if (!std::isfinite(loss)) {
        throw NumericError("non-finite training loss at epoch " + std::to_string(epoch) +
                           ", step " + std::to_string(result.steps + 1));
      }
      for (const auto* p : params) {
        if (!p->grad.AllFinite()) {
          throw NumericError("non-finite gradient for " + p->name + " at epoch " +
                             std::to_string(epoch) + ", step " +
                             std::to_string(result.steps + 1));
        }
      }
      adam.Step();
      ++result.steps;
      epoch_loss += loss;
    }

    EpochLog log;
    log.epoch = epoch;
    log.train_loss = epoch_loss / static_cast<double>(train.size());
    std::vector<double> probs;
    log.val_loss = internal::MeanLoss(model, val, result.pos_weight, &probs, config.workers);
    if (!std::isfinite(log.val_loss)) {
      throw NumericError("non-finite validation loss at epoch " + std::to_string(epoch));
    }
    log.val_f1 = data::ComputeMetrics(probs, val.labels, config.threshold).f1_positive;
    log.improved = !have_best || log.val_f1 > result.best_val_f1 ||
                   (log.val_f1 == result.best_val_f1 && log.val_loss < result.best_val_loss);
    if (log.improved) {
      have_best = true;
      since_best = 0;
      result.best_epoch = epoch;
      result.best_val_f1 = log.val_f1;
      result.best_val_loss = log.val_loss;
      best = internal::SnapshotValues(params);
    } else {
      ++since_best;
    }
    result.history.push_back(log);
    if (on_epoch) on_epoch(log);
    if (since_best >= config.patience) break;
  }
  for (std::size_t i = 0; i < params.size(); ++i) params[i]->value = best[i];
  return result;
}

struct FitResult {
  std::size_t steps = 0;     // optimizer steps taken
  double final_loss = 0.0;   // last full-batch loss measured
  bool reached = false;
};

// Full-batch Adam until the unweighted mean BCE over `set` drops below
// `target_loss` or `max_steps` updates have been made. Used as a capacity
// check: a correct model of adequate size memorizes a small set quickly.
template <typename Model, typename Input>
FitResult FitToLoss(Model& model, const LabeledSet<Input>& set, double target_loss,
                    std::size_t max_steps, const nn::AdamConfig& adam_config = {}) {
  internal::CheckSet(set, "training");
  auto params = model.Parameters();
  nn::Adam adam(params, adam_config);
  std::vector<std::size_t> order(set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  FitResult result;
  while (true) {
    adam.ZeroGrad();
    // The loss returned here is measured before this step's update.
    const double loss =
        internal::AccumulateBatch(model, set, order, 0, order.size(), 1.0) /
        static_cast<double>(set.size());
    if (!std::isfinite(loss)) {
      throw NumericError("non-finite loss at step " + std::to_string(result.steps + 1));
    }
    result.final_loss = loss;
    if (loss < target_loss) {
      result.reached = true;
      break;
    }
    if (result.steps == max_steps) break;
    adam.Step();
    ++result.steps;
  }
  return result;
}

}  // namespace lukthung::models

#endif  // LUKTHUNG_MODELS_TRAINER_H_
