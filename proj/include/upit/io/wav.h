// include/upit/io/wav.h

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

#ifndef UPIT_IO_WAV_H_
#define UPIT_IO_WAV_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "upit/dsp/waveform.h"

namespace upit {

// Canonical storage is RIFF/WAVE, 16-bit PCM, mono; sample k maps to k/32768.

// Rounds to nearest and saturates to [-32768, 32767].
std::vector<int16_t> QuantizePcm16(std::span<const double> samples);
Waveform FromPcm16(std::span<const int16_t> pcm, int sample_rate);

// Throws kMissingInput when the file cannot be opened, kUnsupportedFormat for
// anything but 16-bit PCM mono, kCorruptData for malformed headers.
Waveform ReadWav(const std::filesystem::path &path);
std::vector<int16_t> ReadWavPcm16(const std::filesystem::path &path,
                                  int *sample_rate);

// Complete file image of a PCM16 mono WAV.
std::string EncodeWav(std::span<const int16_t> pcm, int sample_rate);

void WriteWav(const Waveform &w, const std::filesystem::path &path);
void WriteWavPcm16(std::span<const int16_t> pcm, int sample_rate,
                   const std::filesystem::path &path);

}  // namespace upit

#endif  // UPIT_IO_WAV_H_
