// include/upit/model/trainer.h

// Copyright 2026  upitsep authors

// See ../../../COPYING for clarification regarding multiple authors
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

#ifndef UPIT_MODEL_TRAINER_H_
#define UPIT_MODEL_TRAINER_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "upit/dsp/stft.h"
#include "upit/model/blstm.h"

namespace upit {

// One training utterance: mixture magnitude features and the phase-sensitive
// targets a_s cos(phi_s) of every source (output_sources of them).
struct TrainingUtterance {
  std::string id;
  Grid mixture_magnitude;
  std::vector<Grid> targets;
};

struct TrainSchedule {
  double lr_initial = 2e-5;  // per sample
  double lr_decay = 0.7;
  double lr_floor = 1e-10;
  int max_epochs = 200;
  int minibatch_utterances = 8;
  uint64_t seed = 1;
  // Max L2 norm of a minibatch gradient; 0 disables clipping.
  double clip_norm = 0.0;

  void Validate() const;
  bool operator==(const TrainSchedule &) const = default;
};

struct EpochRecord {
  int epoch = 0;                 // 1-based
  double learning_rate = 0.0;    // rate used during this epoch
  double train_loss = 0.0;       // mean normalised uPIT loss
  double validation_loss = 0.0;  // same, inference mode; NaN without data
};

// Schedule state carried across epochs; stored in checkpoints.
struct TrainState {
  int epochs_completed = 0;
  double learning_rate = 0.0;
  double previous_train_loss = 0.0;  // NaN before the first epoch
};

struct TrainResult {
  std::vector<EpochRecord> history;
  TrainState state;
  std::string stop_reason;
};

struct TrainOptions {
  int workers = 1;
  std::function<void(const EpochRecord &)> on_epoch;
};

// Minibatch SGD over the uPIT phase-sensitive loss. Each epoch shuffles the
// utterances, and for every minibatch sums the raw-loss gradients of its
// utterances (in utterance order) and steps by -learning_rate times that sum.
// After an epoch whose mean training loss exceeds the previous epoch's, the
// rate is multiplied by lr_decay. Stops after max_epochs or once the rate
// drops below lr_floor. Throws kNumeric on a non-finite loss.
TrainResult Train(BlstmNetwork &net, std::span<const TrainingUtterance> train,
                  std::span<const TrainingUtterance> validation,
                  const TrainSchedule &schedule, const TrainOptions &options = {});

// Mean normalised uPIT loss in inference mode.
double MeanUpitLoss(const BlstmNetwork &net,
                    std::span<const TrainingUtterance> data, int workers = 1);

// Loss and parameter gradient of one utterance; exposed for gradient checks.
struct UtteranceGradient {
  double raw_loss = 0.0;
  double normalized_loss = 0.0;
  Eigen::VectorXd gradient;
};
UtteranceGradient ComputeUtteranceGradient(const BlstmNetwork &net,
                                           const TrainingUtterance &utt,
                                           bool train_mode, uint64_t seed);

}  // namespace upit

#endif  // UPIT_MODEL_TRAINER_H_
