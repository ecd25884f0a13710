// include/upit/mixing/active_level.h

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

#ifndef UPIT_MIXING_ACTIVE_LEVEL_H_
#define UPIT_MIXING_ACTIVE_LEVEL_H_

#include "upit/dsp/waveform.h"

namespace upit {

// ITU-T P.56 method B parameters.
struct ActiveLevelParams {
  static constexpr double kTimeConstant = 0.03;  // s
  static constexpr double kHangover = 0.2;       // s
  static constexpr double kMarginDb = 15.9;
  static constexpr int kNumThresholds = 16;      // 2^-15 .. 2^0 of the peak
  static constexpr double kMinDuration = 0.1;    // s
};

struct ActiveLevel {
  double level_db = 0.0;   // 10 log10 of the active mean square
  double activity = 0.0;   // fraction of samples judged active
  double long_term_db = 0.0;
};

// P.56 method B active speech level. The threshold ladder is anchored to the
// signal peak rather than to a fixed full scale, which makes the measurement
// exactly scale-equivariant: level(g w) = level(w) + 20 log10 g.
// Throws kInvalidArgument for signals shorter than 100 ms and kNoActiveSpeech
// for all-zero input.
ActiveLevel MeasureActiveLevel(const Waveform &w);

inline double ActiveSpeechLevelDb(const Waveform &w) {
  return MeasureActiveLevel(w).level_db;
}

}  // namespace upit

#endif  // UPIT_MIXING_ACTIVE_LEVEL_H_
