// src/dsp/waveform.cc

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

#include "upit/dsp/waveform.h"

#include <cmath>
#include <string>

#include "upit/error.h"

namespace upit {

double Energy(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return acc;
}

double MeanSquare(std::span<const double> x) {
  return x.empty() ? 0.0 : Energy(x) / static_cast<double>(x.size());
}

double Rms(std::span<const double> x) { return std::sqrt(MeanSquare(x)); }

void ValidateWaveform(const Waveform &w, const char *what) {
  Require(!w.empty(), ErrorKind::kInvalidArgument,
          std::string(what) + ": empty waveform");
  Require(w.sample_rate > 0, ErrorKind::kInvalidArgument,
          std::string(what) + ": sample rate must be positive");
  for (double v : w.samples) {
    Require(std::isfinite(v), ErrorKind::kInvalidArgument,
            std::string(what) + ": non-finite sample");
  }
}

}  // namespace upit
