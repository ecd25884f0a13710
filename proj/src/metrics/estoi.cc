// src/metrics/estoi.cc

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

#include "upit/metrics/estoi.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "upit/dsp/fft.h"
#include "upit/dsp/resample.h"
#include "upit/dsp/stft.h"
#include "upit/error.h"

namespace upit {

namespace {

using C = EstoiConstants;

// Band-by-frequency-bin 0/1 matrix of one-third octave bands.
Eigen::MatrixXd ThirdOctaveBands() {
  const int bins = C::kFftSize / 2 + 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(C::kNumBands, bins);
  auto nearest_bin = [&](double hz) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < bins; ++k) {
      const double d = std::abs(k * double(C::kSampleRate) / C::kFftSize - hz);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    return best;
  };
  for (int j = 0; j < C::kNumBands; ++j) {
    const double lo = C::kMinCenterFrequency * std::pow(2.0, (2.0 * j - 1.0) / 6.0);
    const double hi = C::kMinCenterFrequency * std::pow(2.0, (2.0 * j + 1.0) / 6.0);
    for (int k = nearest_bin(lo); k < nearest_bin(hi); ++k) a(j, k) = 1.0;
  }
  return a;
}

// Drops frames of x more than the dynamic range below its loudest frame, and
// the same frames of y; both are rebuilt by overlap-add of windowed frames.
void RemoveSilentFrames(std::vector<double> &x, std::vector<double> &y) {
  const int len = C::kFrameLength, hop = C::kFrameLength / 2;
  const std::vector<double> w = MakeWindow(WindowType::kHanning, len);
  std::vector<std::size_t> starts;
  for (std::size_t s = 0; s + len <= x.size(); s += hop) starts.push_back(s);
  std::vector<double> energy_db(starts.size());
  double max_db = -std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < starts.size(); ++f) {
    double e = 0.0;
    for (int i = 0; i < len; ++i) {
      const double v = w[i] * x[starts[f] + i];
      e += v * v;
    }
    energy_db[f] = 20.0 * std::log10(std::sqrt(e) + std::numeric_limits<double>::epsilon());
    max_db = std::max(max_db, energy_db[f]);
  }
  std::vector<std::size_t> kept;
  for (std::size_t f = 0; f < starts.size(); ++f)
    if (energy_db[f] - max_db + C::kDynamicRangeDb > 0.0) kept.push_back(starts[f]);
  const std::size_t out_len = kept.empty() ? 0 : (kept.size() - 1) * hop + len;
  std::vector<double> xo(out_len, 0.0), yo(out_len, 0.0);
  for (std::size_t f = 0; f < kept.size(); ++f) {
    for (int i = 0; i < len; ++i) {
      xo[f * hop + i] += w[i] * x[kept[f] + i];
      yo[f * hop + i] += w[i] * y[kept[f] + i];
    }
  }
  x.swap(xo);
  y.swap(yo);
}

// Band envelopes: bands x frames.
Eigen::MatrixXd BandEnvelopes(const std::vector<double> &x,
                              const Eigen::MatrixXd &bands) {
  const int len = C::kFrameLength, hop = C::kFrameLength / 2;
  const std::vector<double> w = MakeWindow(WindowType::kHanning, len);
  std::vector<std::size_t> starts;
  for (std::size_t s = 0; s + len < x.size(); s += hop) starts.push_back(s);
  RealFft fft(C::kFftSize);
  std::vector<double> frame(len);
  std::vector<std::complex<double>> spec(fft.num_bins());
  Eigen::VectorXd power(fft.num_bins());
  Eigen::MatrixXd env(C::kNumBands, starts.size());
  for (std::size_t f = 0; f < starts.size(); ++f) {
    for (int i = 0; i < len; ++i) frame[i] = w[i] * x[starts[f] + i];
    fft.Forward(frame, spec);
    for (int k = 0; k < fft.num_bins(); ++k) power(k) = std::norm(spec[k]);
    env.col(f) = (bands * power).cwiseSqrt();
  }
  return env;
}

void NormalizeRows(Eigen::MatrixXd &m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    m.row(r).array() -= m.row(r).mean();
    const double n = m.row(r).norm();
    if (n > 0.0) m.row(r) /= n;
  }
}

void NormalizeCols(Eigen::MatrixXd &m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    m.col(c).array() -= m.col(c).mean();
    const double n = m.col(c).norm();
    if (n > 0.0) m.col(c) /= n;
  }
}

}  // namespace

double Estoi(const Waveform &clean, const Waveform &processed) {
  ValidateWaveform(clean, "Estoi clean");
  ValidateWaveform(processed, "Estoi processed");
  Require(clean.size() == processed.size(), ErrorKind::kDimensionMismatch,
          "Estoi: signal lengths differ");
  Require(clean.sample_rate == processed.sample_rate,
          ErrorKind::kDimensionMismatch, "Estoi: sample rates differ");

  std::vector<double> x = Resample(clean, C::kSampleRate).samples;
  std::vector<double> y = Resample(processed, C::kSampleRate).samples;
  RemoveSilentFrames(x, y);

  static const Eigen::MatrixXd bands = ThirdOctaveBands();
  const Eigen::MatrixXd ex = BandEnvelopes(x, bands);
  const Eigen::MatrixXd ey = BandEnvelopes(y, bands);
  const Eigen::Index frames = ex.cols();
  Require(frames >= C::kSegmentLength, ErrorKind::kInvalidArgument,
          "Estoi: too few active frames (signal too short or silent)");

  double total = 0.0;
  for (Eigen::Index end = C::kSegmentLength; end <= frames; ++end) {
    Eigen::MatrixXd xs = ex.middleCols(end - C::kSegmentLength, C::kSegmentLength);
    Eigen::MatrixXd ys = ey.middleCols(end - C::kSegmentLength, C::kSegmentLength);
    NormalizeRows(xs);
    NormalizeRows(ys);
    NormalizeCols(xs);
    NormalizeCols(ys);
    total += xs.cwiseProduct(ys).sum() / C::kSegmentLength;
  }
  return total / static_cast<double>(frames - C::kSegmentLength + 1);
}

}  // namespace upit
