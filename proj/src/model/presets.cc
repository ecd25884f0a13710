// src/model/presets.cc

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

#include "upit/model/presets.h"

#include "upit/error.h"

namespace upit {

BlstmConfig FullScaleBlstmConfig(int cells_per_direction) {
  BlstmConfig c;
  c.num_layers = 3;
  c.cells_per_direction = cells_per_direction;
  c.dropout_rate = 0.5;
  return c;
}

BlstmConfig DeskBlstmConfig() {
  BlstmConfig c;
  c.num_layers = 2;
  c.cells_per_direction = 64;
  c.dropout_rate = 0.5;
  return c;
}

TrainSchedule FullScaleTrainSchedule() { return TrainSchedule{}; }

TrainSchedule DeskTrainSchedule() {
  TrainSchedule s;
  s.max_epochs = 50;
  return s;
}

const std::vector<ModelPreset> &ModelPresets() {
  static const std::vector<ModelPreset> presets = [] {
    const auto big = FullScaleBlstmConfig(1280);
    const auto sched = FullScaleTrainSchedule();
    auto two_speaker = FullScaleBlstmConfig(896);
    two_speaker.output_sources = 2;
    std::vector<ModelPreset> p = {
        {"LSTM1", Composition::kTwoPlusThree, {"ssn"}, big, sched, false},
        {"LSTM2", Composition::kTwoPlusThree, {"bbl"}, big, sched, false},
        {"LSTM3", Composition::kTwoPlusThree, {"str"}, big, sched, false},
        {"LSTM4", Composition::kTwoPlusThree, {"caf"}, big, sched, false},
        {"LSTM5", Composition::kTwoPlusThree, {"ssn", "bbl", "str", "caf"}, big, sched, false},
        {"LSTM6", Composition::kTwoSpeaker, {"bbl"}, two_speaker, sched, false},
        {"LSTM7", Composition::kThreeSpeaker, {"bbl"}, big, sched, false},
        {"desk", Composition::kTwoPlusThree, {"ssn", "bbl"}, DeskBlstmConfig(),
         DeskTrainSchedule(), true},
    };
    return p;
  }();
  return presets;
}

const ModelPreset &FindModelPreset(const std::string &id) {
  for (const auto &p : ModelPresets()) {
    if (p.id == id) return p;
  }
  Fail(ErrorKind::kInvalidArgument, "unknown model preset: " + id);
}

}  // namespace upit
