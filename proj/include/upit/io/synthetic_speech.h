// include/upit/io/synthetic_speech.h

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

#ifndef UPIT_IO_SYNTHETIC_SPEECH_H_
#define UPIT_IO_SYNTHETIC_SPEECH_H_

#include <cstdint>
#include <filesystem>
#include <string>

#include "upit/dsp/waveform.h"
#include "upit/io/catalog.h"

namespace upit {

// Source-filter speech stand-in: glottal pulse trains through formant
// resonators, fricative noise bursts and pauses, with per-speaker pitch and
// vocal tract scaling. Used where no licensed corpus is available.
struct SpeakerProfile {
  std::string id;
  double f0_hz = 120.0;
  double formant_scale = 1.0;
  double breathiness = 0.05;
  double speaking_rate = 1.0;
};

SpeakerProfile RandomSpeaker(const std::string &id, uint64_t seed);
Waveform SynthesizeUtterance(const SpeakerProfile &speaker, double duration_s,
                             int sample_rate, uint64_t seed);

struct SyntheticCorpusSpec {
  std::string corpus_id = "synthetic";
  int train_speakers = 16;  // utterances split between train and validation
  int test_speakers = 6;
  int utterances_per_speaker = 12;
  double validation_fraction = 0.2;
  double min_duration_s = 1.0;
  double max_duration_s = 2.0;
  int sample_rate = 8000;
  uint64_t seed = 1;
};

// Writes WAVs and a catalog under dir. Speaker-disjoint test split.
CorpusCatalog GenerateSyntheticCorpus(const SyntheticCorpusSpec &spec,
                                      const std::filesystem::path &dir);

}  // namespace upit

#endif  // UPIT_IO_SYNTHETIC_SPEECH_H_
