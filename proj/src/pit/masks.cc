// src/pit/masks.cc

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

#include "upit/pit/masks.h"

#include "upit/error.h"

namespace upit {
namespace {

void RequireSameShape(const Grid &a, const Grid &b, const char *what) {
  Require(a.rows() == b.rows() && a.cols() == b.cols(),
          ErrorKind::kDimensionMismatch, std::string(what) + ": shape mismatch");
}

}  // namespace

PhaseDifference ComputePhaseDifference(const PhaseSpectrogram &mixture_phase,
                                       const PhaseSpectrogram &source_phase) {
  RequireSameShape(mixture_phase.frames, source_phase.frames,
                   "ComputePhaseDifference");
  PhaseDifference d;
  d.frames = (mixture_phase.frames - source_phase.frames).unaryExpr(&WrapPhase);
  return d;
}

Grid PhaseSensitiveTarget(const MagnitudeSpectrogram &source_magnitude,
                          const PhaseDifference &phi) {
  RequireSameShape(source_magnitude.frames, phi.frames, "PhaseSensitiveTarget");
  return source_magnitude.frames * phi.frames.cos();
}

Mask IdealPhaseSensitiveMask(const MagnitudeSpectrogram &source_magnitude,
                             const PhaseDifference &phi,
                             const MagnitudeSpectrogram &mixture_magnitude) {
  const Grid &r = mixture_magnitude.frames;
  RequireSameShape(source_magnitude.frames, r, "IdealPhaseSensitiveMask");
  RequireSameShape(phi.frames, r, "IdealPhaseSensitiveMask");
  const double floor = kMaskFloor * (r.size() > 0 ? r.maxCoeff() : 0.0);
  Mask m;
  m.frames = Grid::Zero(r.rows(), r.cols());
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    for (Eigen::Index f = 0; f < r.cols(); ++f) {
      if (r(i, f) > floor) {
        m.frames(i, f) =
            source_magnitude.frames(i, f) * std::cos(phi.frames(i, f)) / r(i, f);
      }
    }
  }
  return m;
}

Mask ClampOracleMask(Mask m) {
  m.frames = m.frames.max(kOracleMaskMin).min(kOracleMaskMax);
  return m;
}

std::vector<Mask> IdealRatioMasks(std::span<const MagnitudeSpectrogram> sources) {
  Require(!sources.empty(), ErrorKind::kInvalidArgument,
          "IdealRatioMasks: no sources");
  Grid sum = Grid::Zero(sources[0].frames.rows(), sources[0].frames.cols());
  for (const auto &s : sources) {
    RequireSameShape(s.frames, sum, "IdealRatioMasks");
    sum += s.frames;
  }
  const double floor = kMaskFloor * sum.maxCoeff();
  std::vector<Mask> out;
  for (std::size_t s = 0; s < sources.size(); ++s) {
    Mask m;
    m.source_index = static_cast<int>(s);
    m.frames = (sum > floor).select(sources[s].frames / sum.max(floor), 0.0);
    out.push_back(std::move(m));
  }
  return out;
}

Mask IdealAmplitudeMask(const MagnitudeSpectrogram &source_magnitude,
                        const MagnitudeSpectrogram &mixture_magnitude) {
  const Grid &r = mixture_magnitude.frames;
  RequireSameShape(source_magnitude.frames, r, "IdealAmplitudeMask");
  const double floor = kMaskFloor * r.maxCoeff();
  Mask m;
  m.frames = (r > floor).select(source_magnitude.frames / r.max(floor), 0.0);
  return m;
}

}  // namespace upit
