// include/upit/dsp/resample.h

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

#ifndef UPIT_DSP_RESAMPLE_H_
#define UPIT_DSP_RESAMPLE_H_

#include "upit/dsp/waveform.h"

namespace upit {

// Polyphase rational resampler with a Kaiser-windowed sinc anti-aliasing
// filter (beta 8, >= 60 dB stopband). Output length is
// ceil(length * target / source); group delay is compensated.
Waveform Resample(const Waveform &w, int target_rate);

}  // namespace upit

#endif  // UPIT_DSP_RESAMPLE_H_
