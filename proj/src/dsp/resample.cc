// src/dsp/resample.cc

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

#include "upit/dsp/resample.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "upit/error.h"

namespace upit {
namespace {

constexpr double kKaiserBeta = 8.0;
constexpr int kZeroCrossings = 24;

double Sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

// Lowpass prototype at the upsampled rate, cutoff at the narrower Nyquist,
// passband gain `up`.
std::vector<double> DesignFilter(int up, int down) {
  const int factor = std::max(up, down);
  const int half = kZeroCrossings * factor;
  const double cutoff = 0.5 / factor;  // cycles per upsampled sample
  const double i0_beta = std::cyl_bessel_i(0.0, kKaiserBeta);
  std::vector<double> h(2 * half + 1);
  for (int n = -half; n <= half; ++n) {
    const double ratio = static_cast<double>(n) / half;
    const double kaiser =
        std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - ratio * ratio)) /
        i0_beta;
    h[n + half] = up * 2.0 * cutoff * Sinc(2.0 * cutoff * n) * kaiser;
  }
  return h;
}

}  // namespace

Waveform Resample(const Waveform &w, int target_rate) {
  ValidateWaveform(w, "Resample");
  Require(target_rate > 0, ErrorKind::kInvalidArgument,
          "Resample: target rate must be positive");
  if (target_rate == w.sample_rate) return w;
  const int g = std::gcd(w.sample_rate, target_rate);
  const long up = target_rate / g;
  const long down = w.sample_rate / g;
  const std::vector<double> h = DesignFilter(static_cast<int>(up),
                                             static_cast<int>(down));
  const long taps = static_cast<long>(h.size());
  const long delay = (taps - 1) / 2;
  const long n_in = static_cast<long>(w.size());
  const long n_out = (n_in * up + down - 1) / down;

  Waveform out(static_cast<std::size_t>(n_out), target_rate);
  for (long m = 0; m < n_out; ++m) {
    // y[m] = sum_n x[n] h[m*down + delay - n*up]
    const long t = m * down + delay;
    long n_hi = t / up;
    long n_lo = (t - (taps - 1) + up - 1) / up;
    if (t - (taps - 1) < 0) n_lo = 0;
    n_hi = std::min(n_hi, n_in - 1);
    double acc = 0.0;
    for (long n = std::max(0L, n_lo); n <= n_hi; ++n) {
      acc += w.samples[n] * h[t - n * up];
    }
    out.samples[m] = acc;
  }
  return out;
}

}  // namespace upit
