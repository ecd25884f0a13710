// include/upit/noise/noise_synth.h

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

#ifndef UPIT_NOISE_NOISE_SYNTH_H_
#define UPIT_NOISE_NOISE_SYNTH_H_

#include <array>
#include <cstdint>
#include <span>

#include "upit/dsp/waveform.h"
#include "upit/noise/lpc.h"

namespace upit {

constexpr int kSsnLpcOrder = 12;

// Selects `n_sentences` utterances at random, concatenates them and fits a
// single order-12 LPC model to the concatenation.
LpcModel FitSsnModel(std::span<const Waveform> corpus, int n_sentences,
                     uint64_t seed);

// Filters seeded white Gaussian noise through gain / A(z) and scales the
// result to unit RMS.
Waveform SynthesizeSsn(const LpcModel &model, double duration_s,
                       int sample_rate, uint64_t seed);

// Speech-shaped noise: FitSsnModel followed by SynthesizeSsn.
Waveform GenerateSsn(std::span<const Waveform> corpus, int n_sentences,
                     double duration_s, uint64_t seed);

// Babble: random partition of the corpus into `n_groups` groups, each group
// concatenated and normalised to unit total energy, truncated to the shortest
// group and summed.
Waveform GenerateBabble(std::span<const Waveform> corpus, int n_groups,
                        uint64_t seed);

struct NoisePartition {
  Waveform train;
  Waveform validation;
  Waveform test;
  // Sample boundaries in the parent: [0, b0) train, [b0, b1) validation,
  // [b1, b2) test.
  std::array<std::size_t, 3> boundaries{};
};

// Contiguous, ordered, non-overlapping split proportional to `ratios`.
// Boundaries are floor(total * cumulative ratio / sum of ratios).
NoisePartition PartitionNoise(const Waveform &w, std::array<double, 3> ratios);
std::array<std::size_t, 3> PartitionBoundaries(std::size_t length,
                                               std::array<double, 3> ratios);

}  // namespace upit

#endif  // UPIT_NOISE_NOISE_SYNTH_H_
