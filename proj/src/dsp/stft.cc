// src/dsp/stft.cc

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

#include "upit/dsp/stft.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "upit/dsp/fft.h"
#include "upit/error.h"

namespace upit {

void StftConfig::Validate() const {
  Require(hop > 0 && window_length > 0 && fft_size > 0,
          ErrorKind::kInvalidArgument, "StftConfig: sizes must be positive");
  Require(hop <= window_length && window_length <= fft_size,
          ErrorKind::kInvalidArgument,
          "StftConfig: need hop <= window_length <= fft_size");
}

std::vector<double> MakeWindow(WindowType type, int length) {
  std::vector<double> w(length);
  switch (type) {
    case WindowType::kHanning:
      for (int n = 0; n < length; ++n) {
        w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (n + 1) / (length + 1));
      }
      break;
  }
  return w;
}

std::size_t NumFrames(std::size_t length, const StftConfig &cfg) {
  const auto win = static_cast<std::size_t>(cfg.window_length);
  const auto hop = static_cast<std::size_t>(cfg.hop);
  if (length <= win) return 1;
  return 1 + (length - win + hop - 1) / hop;
}

double WrapPhase(double angle) {
  constexpr double kPi = std::numbers::pi;
  double wrapped = std::remainder(angle, 2.0 * kPi);  // [-pi, pi]
  if (wrapped <= -kPi) wrapped += 2.0 * kPi;
  return wrapped;
}

MagnitudeSpectrogram ComplexSpectrogram::Magnitude() const {
  return {frames.abs(), config, original_length, sample_rate};
}

PhaseSpectrogram ComplexSpectrogram::Phase() const {
  Grid phase(frames.rows(), frames.cols());
  for (Eigen::Index i = 0; i < frames.rows(); ++i) {
    for (Eigen::Index f = 0; f < frames.cols(); ++f) {
      const std::complex<double> z = frames(i, f);
      phase(i, f) = (z == 0.0) ? 0.0 : WrapPhase(std::arg(z));
    }
  }
  return {std::move(phase), config};
}

ComplexSpectrogram Stft(const Waveform &w, const StftConfig &cfg) {
  ValidateWaveform(w, "Stft");
  cfg.Validate();
  const std::size_t k = NumFrames(w.size(), cfg);
  const std::vector<double> window = MakeWindow(cfg.window, cfg.window_length);
  RealFft fft(cfg.fft_size);

  ComplexSpectrogram out;
  out.config = cfg;
  out.original_length = w.size();
  out.sample_rate = w.sample_rate;
  out.frames.resize(static_cast<Eigen::Index>(k), cfg.num_bins());

  std::vector<double> frame(cfg.window_length);
  std::vector<std::complex<double>> spectrum(cfg.num_bins());
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t start = i * cfg.hop;
    for (int n = 0; n < cfg.window_length; ++n) {
      const std::size_t idx = start + n;
      frame[n] = idx < w.size() ? w.samples[idx] * window[n] : 0.0;
    }
    fft.Forward(frame, spectrum);
    for (int f = 0; f < cfg.num_bins(); ++f) {
      out.frames(static_cast<Eigen::Index>(i), f) = spectrum[f];
    }
  }
  return out;
}

namespace {

Waveform OverlapAdd(const ComplexGrid &frames, const StftConfig &cfg,
                    std::size_t original_length, int sample_rate,
                    double norm_floor) {
  cfg.Validate();
  Require(norm_floor >= 0.0 && norm_floor <= 1.0,
          ErrorKind::kInvalidArgument,
          "InverseStft: norm_floor must lie in [0, 1]");
  Require(frames.cols() == cfg.num_bins(), ErrorKind::kDimensionMismatch,
          "InverseStft: bin count does not match config");
  const auto k = static_cast<std::size_t>(frames.rows());
  Require(k >= 1 && k == NumFrames(original_length, cfg),
          ErrorKind::kDimensionMismatch,
          "InverseStft: frame count does not match original length");
  const std::vector<double> window = MakeWindow(cfg.window, cfg.window_length);
  const std::size_t padded = (k - 1) * cfg.hop + cfg.window_length;
  std::vector<double> acc(padded, 0.0), norm(padded, 0.0);

  RealFft fft(cfg.fft_size);
  std::vector<std::complex<double>> spectrum(cfg.num_bins());
  std::vector<double> time(cfg.fft_size);
  for (std::size_t i = 0; i < k; ++i) {
    for (int f = 0; f < cfg.num_bins(); ++f) {
      spectrum[f] = frames(static_cast<Eigen::Index>(i), f);
    }
    fft.Inverse(spectrum, time);
    const std::size_t start = i * cfg.hop;
    for (int n = 0; n < cfg.window_length; ++n) {
      acc[start + n] += time[n] * window[n];
      norm[start + n] += window[n] * window[n];
    }
  }
  const double floor = norm_floor * *std::max_element(norm.begin(), norm.end());
  Waveform out(original_length, sample_rate);
  for (std::size_t n = 0; n < original_length; ++n) {
    out.samples[n] = acc[n] / std::max(norm[n], floor);
  }
  return out;
}

}  // namespace

Waveform InverseStft(const MagnitudeSpectrogram &mag,
                     const PhaseSpectrogram &phase, double norm_floor) {
  Require(mag.frames.rows() == phase.frames.rows() &&
              mag.frames.cols() == phase.frames.cols() &&
              mag.config == phase.config,
          ErrorKind::kDimensionMismatch,
          "InverseStft: magnitude and phase differ in shape or config");
  ComplexGrid z(mag.frames.rows(), mag.frames.cols());
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    for (Eigen::Index f = 0; f < z.cols(); ++f) {
      z(i, f) = std::polar(mag.frames(i, f), phase.frames(i, f));
    }
  }
  return OverlapAdd(z, mag.config, mag.original_length, mag.sample_rate,
                    norm_floor);
}

Waveform InverseStft(const ComplexSpectrogram &spec, double norm_floor) {
  return OverlapAdd(spec.frames, spec.config, spec.original_length,
                    spec.sample_rate, norm_floor);
}

MagnitudeSpectrogram ApplyMask(const Grid &mask, const MagnitudeSpectrogram &r) {
  Require(mask.rows() == r.frames.rows() && mask.cols() == r.frames.cols(),
          ErrorKind::kDimensionMismatch, "ApplyMask: shape mismatch");
  MagnitudeSpectrogram out = r;
  out.frames = mask.max(0.0) * r.frames;
  return out;
}

}  // namespace upit
