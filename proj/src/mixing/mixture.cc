// src/mixing/mixture.cc

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

#include "upit/mixing/mixture.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "upit/error.h"
#include "upit/mixing/active_level.h"
#include "upit/util/random.h"

namespace upit {

const char *CompositionName(Composition c) {
  switch (c) {
    case Composition::kTwoSpeaker: return "2mix";
    case Composition::kThreeSpeaker: return "3mix";
    case Composition::kTwoPlusThree: return "2+3mix";
  }
  return "?";
}

Composition ParseComposition(const std::string &name) {
  for (Composition c : {Composition::kTwoSpeaker, Composition::kThreeSpeaker,
                        Composition::kTwoPlusThree}) {
    if (name == CompositionName(c)) return c;
  }
  Fail(ErrorKind::kInvalidArgument, "unknown composition: " + name);
}

void MixtureRecipe::Validate() const {
  const int n = num_real_sources();
  Require(n >= 2 && n <= 3, ErrorKind::kInvalidArgument,
          "MixtureRecipe " + id + ": need 2 or 3 real sources");
  Require(num_outputs() <= 3, ErrorKind::kInvalidArgument,
          "MixtureRecipe " + id + ": silent speaker only with 2 real sources");
  Require(static_cast<int>(level_offsets_db.size()) == n - 1,
          ErrorKind::kInvalidArgument,
          "MixtureRecipe " + id + ": one level offset per non-reference speaker");
  Require(noise_id.has_value() == snr_db.has_value(), ErrorKind::kInvalidArgument,
          "MixtureRecipe " + id + ": snr_db present iff noise_id present");
  Require(noise_offset >= 0, ErrorKind::kInvalidArgument,
          "MixtureRecipe " + id + ": negative noise offset");
}

namespace {

Waveform SumComponents(const std::vector<Waveform> &sources,
                       const std::optional<Waveform> &noise) {
  Waveform sum(sources.front().size(), sources.front().sample_rate);
  for (const Waveform &s : sources) {
    for (std::size_t n = 0; n < sum.size(); ++n) sum.samples[n] += s.samples[n];
  }
  if (noise) {
    for (std::size_t n = 0; n < sum.size(); ++n) sum.samples[n] += noise->samples[n];
  }
  return sum;
}

}  // namespace

Waveform MixtureExample::NoiseFreeMixture() const {
  return SumComponents(sources, std::nullopt);
}

double MixtureExample::AdditivityError() const {
  const Waveform sum = SumComponents(sources, noise);
  double err = 0.0;
  for (std::size_t n = 0; n < sum.size(); ++n) {
    err = std::max(err, std::abs(mixture.samples[n] - sum.samples[n]));
  }
  return err;
}

MixtureExample MixSpeakers(std::span<const Waveform> utterances,
                           std::span<const double> level_offsets_db) {
  Require(utterances.size() >= 2 && utterances.size() <= 3,
          ErrorKind::kInvalidArgument, "MixSpeakers: need 2 or 3 utterances");
  Require(level_offsets_db.size() + 1 == utterances.size(),
          ErrorKind::kInvalidArgument,
          "MixSpeakers: one level offset per non-reference speaker");
  std::size_t length = 0;
  for (const Waveform &u : utterances) {
    ValidateWaveform(u, "MixSpeakers");
    Require(u.sample_rate == utterances.front().sample_rate,
            ErrorKind::kInvalidArgument, "MixSpeakers: sample rates differ");
    length = std::max(length, u.size());
  }

  MixtureExample ex;
  ex.sources.reserve(utterances.size());
  for (const Waveform &u : utterances) {
    Waveform padded = u;
    padded.samples.resize(length, 0.0);
    ex.sources.push_back(std::move(padded));
  }
  // Levels are measured on the padded signals so that a re-measurement of
  // the stored sources reproduces the requested offsets.
  const double reference_db = ActiveSpeechLevelDb(ex.sources[0]);
  ex.recipe.source_gains.assign(ex.sources.size(), 1.0);
  ex.recipe.level_offsets_db.assign(level_offsets_db.begin(),
                                    level_offsets_db.end());
  for (std::size_t s = 1; s < ex.sources.size(); ++s) {
    const double level_db = ActiveSpeechLevelDb(ex.sources[s]);
    const double gain =
        std::pow(10.0, (reference_db - level_offsets_db[s - 1] - level_db) / 20.0);
    for (double &v : ex.sources[s].samples) v *= gain;
    ex.recipe.source_gains[s] = gain;
  }
  ex.mixture = SumComponents(ex.sources, std::nullopt);
  return ex;
}

MixtureExample AddSilentSpeaker(MixtureExample ex, uint64_t seed) {
  Require(ex.sources.size() == 2, ErrorKind::kInvalidArgument,
          "AddSilentSpeaker: example must have exactly 2 sources");
  const double base = 0.5 * (MeanSquare(ex.sources[0].view()) +
                             MeanSquare(ex.sources[1].view()));
  Require(base > 0.0, ErrorKind::kNoActiveSpeech,
          "AddSilentSpeaker: real sources are silent");
  const std::size_t length = ex.sources[0].size();
  Waveform silent(length, ex.sources[0].sample_rate);
  auto engine = MakeEngine(seed, {0x5111e47});
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (double &v : silent.samples) v = gauss(engine);
  const double scale =
      std::sqrt(base * std::pow(10.0, -kSilentSpeakerGapDb / 10.0) /
                MeanSquare(silent.view()));
  for (double &v : silent.samples) v *= scale;

  ex.sources.push_back(std::move(silent));
  ex.recipe.silent_speaker_present = true;
  ex.recipe.source_gains.push_back(scale);
  ex.mixture = SumComponents(ex.sources, ex.noise);
  return ex;
}

MixtureExample AddNoiseAtSnr(MixtureExample ex, const Waveform &noise,
                             std::size_t offset, double snr_db) {
  Require(!ex.noise.has_value(), ErrorKind::kInvalidArgument,
          "AddNoiseAtSnr: example already contains noise");
  Require(snr_db >= kMinSnrDb && snr_db <= kMaxSnrDb, ErrorKind::kInvalidArgument,
          "AddNoiseAtSnr: snr outside [-30, 60] dB");
  Require(noise.sample_rate == ex.mixture.sample_rate, ErrorKind::kInvalidArgument,
          "AddNoiseAtSnr: sample rates differ");
  const std::size_t length = ex.mixture.size();
  Require(offset <= noise.size() && noise.size() - offset >= length,
          ErrorKind::kInvalidArgument, "AddNoiseAtSnr: noise segment too short");

  Waveform slice(std::vector<double>(noise.samples.begin() + offset,
                                     noise.samples.begin() + offset + length),
                 noise.sample_rate);
  const double noise_ms = MeanSquare(slice.view());
  Require(noise_ms > 0.0, ErrorKind::kInvalidArgument,
          "AddNoiseAtSnr: noise segment is silent");
  const double speech_db = ActiveSpeechLevelDb(ex.NoiseFreeMixture());
  const double gain =
      std::sqrt(std::pow(10.0, (speech_db - snr_db) / 10.0) / noise_ms);
  for (double &v : slice.samples) v *= gain;

  ex.noise = std::move(slice);
  ex.recipe.snr_db = snr_db;
  ex.recipe.noise_offset = static_cast<int64_t>(offset);
  ex.mixture = SumComponents(ex.sources, ex.noise);
  return ex;
}

double MeasuredSnrDb(const MixtureExample &ex) {
  Require(ex.noise.has_value(), ErrorKind::kInvalidArgument,
          "MeasuredSnrDb: example has no noise");
  return ActiveSpeechLevelDb(ex.NoiseFreeMixture()) -
         10.0 * std::log10(MeanSquare(ex.noise->view()));
}

}  // namespace upit
