// include/upit/model/separate.h

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

#ifndef UPIT_MODEL_SEPARATE_H_
#define UPIT_MODEL_SEPARATE_H_

#include <span>
#include <vector>

#include "upit/dsp/stft.h"
#include "upit/model/blstm.h"

namespace upit {

// Applies masks to the mixture magnitude and resynthesises each with the
// mixture phase. Every output has the mixture's length. The synthesis
// normaliser is floored so edge samples of masked frames are not amplified.
std::vector<Waveform> ResynthesizeWithMixturePhase(
    const ComplexSpectrogram &mixture, std::span<const Grid> masks);

// Mixture -> magnitude features -> inference-mode network -> masked
// magnitudes -> inverse STFT with the mixture phase.
std::vector<Waveform> Separate(const BlstmNetwork &net, const Waveform &mixture,
                               const StftConfig &cfg = {});

}  // namespace upit

#endif  // UPIT_MODEL_SEPARATE_H_
