// include/upit/model/presets.h

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

#ifndef UPIT_MODEL_PRESETS_H_
#define UPIT_MODEL_PRESETS_H_

#include <string>
#include <vector>

#include "upit/mixing/mixture.h"
#include "upit/model/blstm.h"
#include "upit/model/trainer.h"

namespace upit {

// Training condition of a model: dataset composition and noise types, plus
// the network and schedule it is trained with.
struct ModelPreset {
  std::string id;
  Composition composition = Composition::kTwoPlusThree;
  std::vector<std::string> noise_types;
  BlstmConfig network;
  TrainSchedule schedule;
  bool desk_scale = false;
};

// LSTM1..LSTM7 (full size) followed by the desk preset.
const std::vector<ModelPreset> &ModelPresets();
// Throws kInvalidArgument for an unknown id.
const ModelPreset &FindModelPreset(const std::string &id);

BlstmConfig FullScaleBlstmConfig(int cells_per_direction);
BlstmConfig DeskBlstmConfig();
TrainSchedule FullScaleTrainSchedule();
TrainSchedule DeskTrainSchedule();

}  // namespace upit

#endif  // UPIT_MODEL_PRESETS_H_
