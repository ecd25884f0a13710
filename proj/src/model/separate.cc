// src/model/separate.cc

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

#include "upit/model/separate.h"

#include "upit/error.h"

namespace upit {

namespace {

constexpr double kSynthesisNormFloor = 1e-3;

}  // namespace

std::vector<Waveform> ResynthesizeWithMixturePhase(
    const ComplexSpectrogram &mixture, std::span<const Grid> masks) {
  const MagnitudeSpectrogram r = mixture.Magnitude();
  const PhaseSpectrogram phase = mixture.Phase();
  std::vector<Waveform> out;
  out.reserve(masks.size());
  for (const Grid &m : masks) {
    out.push_back(InverseStft(ApplyMask(m, r), phase, kSynthesisNormFloor));
  }
  return out;
}

std::vector<Waveform> Separate(const BlstmNetwork &net, const Waveform &mixture,
                               const StftConfig &cfg) {
  Require(cfg.num_bins() == net.config().input_dim &&
              cfg.num_bins() == net.config().output_dim_per_source,
          ErrorKind::kDimensionMismatch,
          "Separate: STFT bin count does not match the network");
  const ComplexSpectrogram spec = Stft(mixture, cfg);
  const std::vector<Grid> masks = net.Infer(spec.Magnitude().frames);
  return ResynthesizeWithMixturePhase(spec, masks);
}

}  // namespace upit
