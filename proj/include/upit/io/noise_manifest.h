// include/upit/io/noise_manifest.h

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

#ifndef UPIT_IO_NOISE_MANIFEST_H_
#define UPIT_IO_NOISE_MANIFEST_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include "upit/dsp/waveform.h"
#include "upit/noise/noise_synth.h"

namespace upit {

inline constexpr std::array<double, 3> kNoiseSplitRatios = {8.0, 1.0, 1.0};
// Noise is stored peak-normalised; its level is set later by the SNR.
inline constexpr double kNoiseStoragePeak = 0.9;

struct NoiseRecord {
  std::string noise_id;
  std::string type;  // ssn, bbl, or file
  std::string corpus_id;
  uint64_t seed = 0;
  int sample_rate = 8000;
  int64_t num_samples = 0;
  std::array<std::size_t, 3> boundaries{};
  int n_sentences = 0;  // ssn
  int n_groups = 0;     // bbl
  double storage_gain = 1.0;
  std::string wav_path;  // relative to the record's directory
  std::string checksum;
};

struct NoiseSource {
  NoiseRecord record;
  std::filesystem::path record_path;
  Waveform waveform;

  // The partition slice for "train", "validation" or "test".
  Waveform Slice(const std::string &split) const;
};

// Writes <dir>/<id>.wav and <dir>/<id>.json; fills boundaries, length and
// checksum. Returns the record path.
std::filesystem::path SaveNoise(NoiseRecord record, const Waveform &w,
                                const std::filesystem::path &dir);
NoiseRecord ReadNoiseRecord(const std::filesystem::path &path);
// Loads the WAV and verifies its checksum (kCorruptData on mismatch).
NoiseSource LoadNoise(const std::filesystem::path &record_path);

}  // namespace upit

#endif  // UPIT_IO_NOISE_MANIFEST_H_
