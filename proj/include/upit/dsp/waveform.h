// include/upit/dsp/waveform.h

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

#ifndef UPIT_DSP_WAVEFORM_H_
#define UPIT_DSP_WAVEFORM_H_

#include <cstddef>
#include <span>
#include <vector>

namespace upit {

// Mono audio at a fixed sample rate. Amplitudes are nominally in [-1, 1].
struct Waveform {
  std::vector<double> samples;
  int sample_rate = 8000;

  Waveform() = default;
  Waveform(std::vector<double> s, int rate)
      : samples(std::move(s)), sample_rate(rate) {}
  Waveform(std::size_t length, int rate) : samples(length, 0.0), sample_rate(rate) {}

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
  std::span<const double> view() const { return samples; }
};

// Sum of squared samples.
double Energy(std::span<const double> x);
// Mean of squared samples; zero for an empty span.
double MeanSquare(std::span<const double> x);
double Rms(std::span<const double> x);

// Throws kInvalidArgument unless the waveform is non-empty, finite and has a
// positive sample rate.
void ValidateWaveform(const Waveform &w, const char *what);

}  // namespace upit

#endif  // UPIT_DSP_WAVEFORM_H_
