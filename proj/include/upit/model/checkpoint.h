// include/upit/model/checkpoint.h

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

#ifndef UPIT_MODEL_CHECKPOINT_H_
#define UPIT_MODEL_CHECKPOINT_H_

#include <filesystem>
#include <string>

#include "upit/model/blstm.h"
#include "upit/model/trainer.h"

namespace upit {

// Binary container, little endian:
//   magic "UPITCKPT", u32 version,
//   u32 length + bytes: model id,
//   network config (6 x i32 + f64 dropout),
//   schedule (5 x f64, 2 x i32, u64 seed),
//   train state (i32 epochs, f64 rate, f64 previous loss),
//   u32 block count, then per block: u32 name length, name, u64 rows,
//   u64 cols, rows*cols f64 column-major.
inline constexpr char kCheckpointMagic[8] = {'U', 'P', 'I', 'T', 'C', 'K', 'P', 'T'};
inline constexpr uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  std::string model_id;
  BlstmNetwork network;
  TrainSchedule schedule;
  TrainState state;
};

void SaveCheckpoint(const Checkpoint &ckpt, const std::filesystem::path &path);
// Throws kMissingInput if the file does not exist and kCorruptData for a bad
// magic, version or layout.
Checkpoint LoadCheckpoint(const std::filesystem::path &path);

}  // namespace upit

#endif  // UPIT_MODEL_CHECKPOINT_H_
