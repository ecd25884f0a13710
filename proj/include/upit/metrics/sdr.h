// include/upit/metrics/sdr.h

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

#ifndef UPIT_METRICS_SDR_H_
#define UPIT_METRICS_SDR_H_

#include "upit/dsp/waveform.h"

namespace upit {

constexpr int kSdrFilterLength = 512;
constexpr double kSdrCapDb = 100.0;

// Single-source signal-to-distortion ratio. The estimate is projected onto
// the span of `filter_length` delayed copies of the reference (an allowed
// time-invariant distortion filter); SDR = 10 log10(|target|^2 / |residual|^2)
// over the filter-extended support, capped at kSdrCapDb.
// Throws for unequal lengths or an all-zero reference.
double Sdr(const Waveform &reference, const Waveform &estimate,
           int filter_length = kSdrFilterLength);

}  // namespace upit

#endif  // UPIT_METRICS_SDR_H_
