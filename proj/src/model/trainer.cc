// src/model/trainer.cc

// Copyright 2026  upitsep authors

// See ../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "upit/model/trainer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "upit/error.h"
#include "upit/pit/pit_loss.h"
#include "upit/util/parallel.h"
#include "upit/util/random.h"

namespace upit {

void TrainSchedule::Validate() const {
  Require(lr_initial > 0.0 && lr_decay > 0.0 && lr_decay < 1.0 &&
              lr_floor > 0.0 && lr_floor < lr_initial,
          ErrorKind::kInvalidArgument,
          "TrainSchedule: need 0 < decay < 1 and 0 < floor < initial rate");
  Require(max_epochs >= 1 && minibatch_utterances >= 1,
          ErrorKind::kInvalidArgument,
          "TrainSchedule: epochs and minibatch size must be positive");
  Require(clip_norm >= 0.0, ErrorKind::kInvalidArgument,
          "TrainSchedule: negative clip norm");
}

UtteranceGradient ComputeUtteranceGradient(const BlstmNetwork &net,
                                           const TrainingUtterance &utt,
                                           bool train_mode, uint64_t seed) {
  ForwardResult fwd = net.Forward(utt.mixture_magnitude, train_mode, seed);
  const Permutation perm =
      UpitPermutation(fwd.masks, utt.mixture_magnitude, utt.targets);
  const UtteranceLoss loss =
      UpitLoss(fwd.masks, utt.mixture_magnitude, utt.targets, perm);
  const std::vector<Grid> mask_grads =
      UpitLossGradient(fwd.masks, utt.mixture_magnitude, utt.targets, perm);
  UtteranceGradient out;
  out.raw_loss = loss.total;
  out.normalized_loss = loss.normalized;
  out.gradient = net.Backward(fwd.cache, mask_grads);
  return out;
}

double MeanUpitLoss(const BlstmNetwork &net,
                    std::span<const TrainingUtterance> data, int workers) {
  if (data.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> losses(data.size());
  ParallelFor(data.size(), workers, [&](std::size_t u) {
    const std::vector<Grid> masks = net.Infer(data[u].mixture_magnitude);
    const Permutation perm =
        UpitPermutation(masks, data[u].mixture_magnitude, data[u].targets);
    losses[u] =
        UpitLoss(masks, data[u].mixture_magnitude, data[u].targets, perm).normalized;
  });
  return std::accumulate(losses.begin(), losses.end(), 0.0) / data.size();
}

TrainResult Train(BlstmNetwork &net, std::span<const TrainingUtterance> train,
                  std::span<const TrainingUtterance> validation,
                  const TrainSchedule &schedule, const TrainOptions &options) {
  schedule.Validate();
  Require(!train.empty(), ErrorKind::kInvalidArgument, "Train: empty training set");

  TrainResult result;
  result.state.learning_rate = schedule.lr_initial;
  result.state.previous_train_loss = std::numeric_limits<double>::quiet_NaN();

  std::vector<std::size_t> order(train.size());
  for (int epoch = 1; epoch <= schedule.max_epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    auto engine = MakeEngine(schedule.seed, {0x7a1, static_cast<uint64_t>(epoch)});
    std::shuffle(order.begin(), order.end(), engine);

    const double lr = result.state.learning_rate;
    double loss_sum = 0.0;
    const auto batch = static_cast<std::size_t>(schedule.minibatch_utterances);
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t count = std::min(batch, order.size() - start);
      std::vector<UtteranceGradient> grads(count);
      ParallelFor(count, options.workers, [&](std::size_t b) {
        const std::size_t u = order[start + b];
        const uint64_t dropout_seed =
            DeriveSeed(schedule.seed, {static_cast<uint64_t>(epoch), u});
        grads[b] = ComputeUtteranceGradient(net, train[u], true, dropout_seed);
      });
      // Fixed-order reduction keeps results independent of worker count.
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(net.parameters().size());
      for (std::size_t b = 0; b < count; ++b) {
        if (!std::isfinite(grads[b].raw_loss)) {
          std::ostringstream msg;
          msg << "Train: non-finite loss on utterance '" << train[order[start + b]].id
              << "' in epoch " << epoch;
          Fail(ErrorKind::kNumeric, msg.str());
        }
        loss_sum += grads[b].normalized_loss;
        sum += grads[b].gradient;
      }
      Require(sum.allFinite(), ErrorKind::kNumeric,
              "Train: non-finite gradient in epoch " + std::to_string(epoch));
      if (schedule.clip_norm > 0.0) {
        const double norm = sum.norm();
        if (norm > schedule.clip_norm) sum *= schedule.clip_norm / norm;
      }
      net.Update(-lr * sum);
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.learning_rate = lr;
    rec.train_loss = loss_sum / static_cast<double>(train.size());
    rec.validation_loss = MeanUpitLoss(net, validation, options.workers);
    result.history.push_back(rec);
    if (options.on_epoch) options.on_epoch(rec);

    // Consecutive-epoch comparison.
    if (!std::isnan(result.state.previous_train_loss) &&
        rec.train_loss > result.state.previous_train_loss) {
      result.state.learning_rate *= schedule.lr_decay;
    }
    result.state.previous_train_loss = rec.train_loss;
    result.state.epochs_completed = epoch;
    if (result.state.learning_rate < schedule.lr_floor) {
      result.stop_reason = "learning rate below floor";
      return result;
    }
  }
  result.stop_reason = "maximum epochs reached";
  return result;
}

}  // namespace upit
