// include/upit/metrics/estoi.h

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

#ifndef UPIT_METRICS_ESTOI_H_
#define UPIT_METRICS_ESTOI_H_

#include "upit/dsp/waveform.h"

namespace upit {

struct EstoiConstants {
  static constexpr int kSampleRate = 10000;
  static constexpr int kFrameLength = 256;
  static constexpr int kFftSize = 512;
  static constexpr int kNumBands = 15;
  static constexpr double kMinCenterFrequency = 150.0;
  static constexpr int kSegmentLength = 30;
  static constexpr double kDynamicRangeDb = 40.0;
};

// Extended short-time objective intelligibility of `processed` against
// `clean`. Both are resampled to 10 kHz; frames of the clean signal more than
// 40 dB below its loudest frame are dropped from both; one-third octave band
// envelopes (15 bands from 150 Hz) are cut into 30-frame segments whose rows
// and then columns are mean/variance normalised; the result is the mean
// segment correlation, in [-1, 1]. Throws kInvalidArgument when fewer than
// 30 frames remain.
double Estoi(const Waveform &clean, const Waveform &processed);

}  // namespace upit

#endif  // UPIT_METRICS_ESTOI_H_
