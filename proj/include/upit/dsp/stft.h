// include/upit/dsp/stft.h

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

#ifndef UPIT_DSP_STFT_H_
#define UPIT_DSP_STFT_H_

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "upit/dsp/waveform.h"

namespace upit {

// Frames x bins real grid; row i is frame i.
using Grid = Eigen::ArrayXXd;
using ComplexGrid = Eigen::ArrayXXcd;

enum class WindowType {
  // 0.5 - 0.5 cos(2 pi (n + 1) / (N + 1)), n = 0..N-1. No zero end points,
  // so every sample of the signal receives nonzero analysis weight.
  kHanning,
};

struct StftConfig {
  int fft_size = 256;
  int window_length = 256;
  int hop = 128;
  WindowType window = WindowType::kHanning;

  int num_bins() const { return fft_size / 2 + 1; }
  // Throws kInvalidArgument when hop <= window_length <= fft_size fails or
  // the overlap-add normalizer would vanish somewhere.
  void Validate() const;

  bool operator==(const StftConfig &) const = default;
};

std::vector<double> MakeWindow(WindowType type, int length);

// Number of frames needed so that every one of `length` samples lies in at
// least one frame (tail zero-padded).
std::size_t NumFrames(std::size_t length, const StftConfig &cfg);

struct MagnitudeSpectrogram {
  Grid frames;
  StftConfig config;
  std::size_t original_length = 0;
  int sample_rate = 8000;
};

struct PhaseSpectrogram {
  Grid frames;  // radians in (-pi, pi]
  StftConfig config;
};

struct ComplexSpectrogram {
  ComplexGrid frames;
  StftConfig config;
  std::size_t original_length = 0;
  int sample_rate = 8000;

  Eigen::Index num_frames() const { return frames.rows(); }
  Eigen::Index num_bins() const { return frames.cols(); }

  MagnitudeSpectrogram Magnitude() const;
  // Exactly-zero bins get phase 0.
  PhaseSpectrogram Phase() const;
};

ComplexSpectrogram Stft(const Waveform &w, const StftConfig &cfg = {});

// Overlap-add synthesis normalised by the accumulated squared window, which
// makes Stft -> InverseStft an identity for any valid config. The result has
// exactly mag.original_length samples. A positive norm_floor bounds the
// normaliser from below at that fraction of its peak; samples covered only by
// the low-weight tail of one window are then attenuated instead of amplified,
// which keeps masked (inconsistent) spectrograms stable at the signal edges.
Waveform InverseStft(const MagnitudeSpectrogram &mag,
                     const PhaseSpectrogram &phase, double norm_floor = 0.0);
Waveform InverseStft(const ComplexSpectrogram &spec, double norm_floor = 0.0);

// Hadamard product of a (clamped at zero) mask with a magnitude spectrogram.
MagnitudeSpectrogram ApplyMask(const Grid &mask, const MagnitudeSpectrogram &r);

// Wraps an angle to (-pi, pi].
double WrapPhase(double angle);

}  // namespace upit

#endif  // UPIT_DSP_STFT_H_
