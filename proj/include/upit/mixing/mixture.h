// include/upit/mixing/mixture.h

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

#ifndef UPIT_MIXING_MIXTURE_H_
#define UPIT_MIXING_MIXTURE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "upit/dsp/waveform.h"

namespace upit {

struct MixtureRecipe {
  std::string id;
  std::string split;
  std::vector<std::string> source_ids;
  // Attenuation of speaker s+1 below speaker 0, in dB (nonnegative).
  std::vector<double> level_offsets_db;
  // Linear gains actually applied; filled in at synthesis time.
  std::vector<double> source_gains;
  bool silent_speaker_present = false;
  std::optional<std::string> noise_id;
  int64_t noise_offset = 0;  // samples into the noise partition of `split`
  std::optional<double> snr_db;
  uint64_t seed = 0;

  int num_real_sources() const { return static_cast<int>(source_ids.size()); }
  int num_outputs() const {
    return num_real_sources() + (silent_speaker_present ? 1 : 0);
  }
  // Checks the structural invariants (2..3 real sources, at most 3 outputs,
  // snr iff noise, one offset per non-reference speaker).
  void Validate() const;
};

// mixture[n] == sum_s sources[s][n] + noise[n], summed in that order.
struct MixtureExample {
  Waveform mixture;
  std::vector<Waveform> sources;
  std::optional<Waveform> noise;
  MixtureRecipe recipe;

  Waveform NoiseFreeMixture() const;
  // Largest |mixture - (sum of sources + noise)| over all samples.
  double AdditivityError() const;
};

// Speaker-count composition of a dataset. kTwoPlusThree holds equal numbers
// of three-speaker mixtures and two-speaker mixtures padded with a silent
// third speaker.
enum class Composition { kTwoSpeaker, kThreeSpeaker, kTwoPlusThree };

const char *CompositionName(Composition c);
Composition ParseComposition(const std::string &name);

constexpr double kSilentSpeakerGapDb = 70.0;
constexpr double kMinSnrDb = -30.0;
constexpr double kMaxSnrDb = 60.0;

// Levels speakers against speaker 0 so that speaker s sits
// level_offsets_db[s-1] dB below it, zero-pads to the longest utterance and
// sums. Throws for fewer than 2 or more than 3 utterances, mismatched rates,
// or an utterance without active speech.
MixtureExample MixSpeakers(std::span<const Waveform> utterances,
                           std::span<const double> level_offsets_db);

// Appends white Gaussian noise 70 dB below the mean energy of the two real
// sources as a third source and adds it into the mixture.
MixtureExample AddSilentSpeaker(MixtureExample ex, uint64_t seed);

// Adds noise[offset, offset + length) scaled so that the active speech level
// of the noise-free mixture exceeds the noise mean square by snr_db.
MixtureExample AddNoiseAtSnr(MixtureExample ex, const Waveform &noise,
                             std::size_t offset, double snr_db);

// Measured SNR of a noisy example: active level of the noise-free mixture
// against the mean square of the stored noise.
double MeasuredSnrDb(const MixtureExample &ex);

}  // namespace upit

#endif  // UPIT_MIXING_MIXTURE_H_
