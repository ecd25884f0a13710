// include/upit/pit/masks.h

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

#ifndef UPIT_PIT_MASKS_H_
#define UPIT_PIT_MASKS_H_

#include <span>
#include <vector>

#include "upit/dsp/stft.h"

namespace upit {

// Per-frame, per-bin real gains for one output source.
struct Mask {
  Grid frames;
  int source_index = 0;
};

// Element-wise phase of the mixture minus the phase of a source, radians.
struct PhaseDifference {
  Grid frames;
};

// Relative floor below which a mixture bin is treated as empty.
constexpr double kMaskFloor = 1e-8;
// Clamp range of the oracle mask when it is used to resynthesise audio.
constexpr double kOracleMaskMin = 0.0;
constexpr double kOracleMaskMax = 2.0;

// phi_mixture - phi_source wrapped to (-pi, pi].
PhaseDifference ComputePhaseDifference(const PhaseSpectrogram &mixture_phase,
                                       const PhaseSpectrogram &source_phase);

// a_s cos(phi_s): the quantity the phase-sensitive loss regresses onto.
Grid PhaseSensitiveTarget(const MagnitudeSpectrogram &source_magnitude,
                          const PhaseDifference &phi);

// Ideal phase-sensitive filter a_s cos(phi) / r, zero where
// r <= kMaskFloor * max(r). Not clamped.
Mask IdealPhaseSensitiveMask(const MagnitudeSpectrogram &source_magnitude,
                             const PhaseDifference &phi,
                             const MagnitudeSpectrogram &mixture_magnitude);
// Same mask clamped to [kOracleMaskMin, kOracleMaskMax].
Mask ClampOracleMask(Mask m);

// Comparison-only oracle masks: a_s / sum_t a_t and a_s / r.
std::vector<Mask> IdealRatioMasks(std::span<const MagnitudeSpectrogram> sources);
Mask IdealAmplitudeMask(const MagnitudeSpectrogram &source_magnitude,
                        const MagnitudeSpectrogram &mixture_magnitude);

}  // namespace upit

#endif  // UPIT_PIT_MASKS_H_
