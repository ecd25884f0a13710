// src/metrics/sdr.cc

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

#include "upit/metrics/sdr.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "upit/dsp/fft.h"
#include "upit/error.h"

namespace upit {

namespace {

int NextPowerOfTwo(std::size_t n) {
  int p = 1;
  while (static_cast<std::size_t>(p) < n) p <<= 1;
  return p;
}

// Solves T x = b for the symmetric positive definite Toeplitz matrix whose
// first column is r (Levinson recursion). Returns false on breakdown.
bool SolveToeplitz(const std::vector<double> &r, const std::vector<double> &b,
                   std::vector<double> *x) {
  const int n = static_cast<int>(b.size());
  std::vector<double> f(n, 0.0), back(n, 0.0);
  x->assign(n, 0.0);
  if (!(r[0] > 0.0)) return false;
  f[0] = 1.0 / r[0];
  (*x)[0] = b[0] / r[0];
  for (int k = 1; k < n; ++k) {
    // Forward vector f solves the leading k x k system for e_0; by symmetry
    // its reversal solves it for e_{k-1}.
    double ef = 0.0;
    for (int i = 0; i < k; ++i) ef += r[k - i] * f[i];
    const double denom = 1.0 - ef * ef;
    if (!(denom > 0.0)) return false;
    const double alpha = 1.0 / denom, beta = -ef / denom;
    for (int i = 0; i < k; ++i) back[i] = f[i];
    f[k] = 0.0;
    for (int i = 0; i <= k; ++i) {
      const double fi = i < k ? back[i] : 0.0;
      const double bi = i > 0 ? back[k - i] : 0.0;
      f[i] = alpha * fi + beta * bi;
    }
    double ex = 0.0;
    for (int i = 0; i < k; ++i) ex += r[k - i] * (*x)[i];
    const double g = b[k] - ex;
    for (int i = 0; i <= k; ++i) (*x)[i] += g * f[k - i];
  }
  return true;
}

}  // namespace

double Sdr(const Waveform &reference, const Waveform &estimate,
           int filter_length) {
  ValidateWaveform(reference, "Sdr reference");
  ValidateWaveform(estimate, "Sdr estimate");
  Require(reference.size() == estimate.size(), ErrorKind::kDimensionMismatch,
          "Sdr: reference and estimate lengths differ");
  Require(filter_length >= 1, ErrorKind::kInvalidArgument,
          "Sdr: filter_length must be positive");
  const double ref_energy = Energy(reference.view());
  Require(ref_energy > 0.0, ErrorKind::kInvalidArgument,
          "Sdr: reference is all zeros");

  const std::size_t n = reference.size();
  const int taps = filter_length;
  const std::size_t extended = n + taps - 1;
  const int nfft = NextPowerOfTwo(n + extended);
  RealFft fft(nfft);
  std::vector<std::complex<double>> s_spec(fft.num_bins()), e_spec(fft.num_bins()),
      work(fft.num_bins());
  fft.Forward(reference.view(), s_spec);
  fft.Forward(estimate.view(), e_spec);
  std::vector<double> tmp(nfft);

  // Gram matrix of delayed reference copies is Toeplitz in the
  // autocorrelation; the right-hand side is the cross-correlation.
  for (int k = 0; k < fft.num_bins(); ++k) work[k] = std::norm(s_spec[k]);
  fft.Inverse(work, tmp);
  std::vector<double> autocorr(tmp.begin(), tmp.begin() + taps);
  for (int k = 0; k < fft.num_bins(); ++k)
    work[k] = std::conj(s_spec[k]) * e_spec[k];
  fft.Inverse(work, tmp);
  const std::vector<double> rhs(tmp.begin(), tmp.begin() + taps);

  std::vector<double> c;
  Require(SolveToeplitz(autocorr, rhs, &c), ErrorKind::kNumeric,
          "Sdr: projection system is singular");
  fft.Forward(c, work);
  for (int k = 0; k < fft.num_bins(); ++k) work[k] *= s_spec[k];
  fft.Inverse(work, tmp);

  double target = 0.0, residual = 0.0;
  for (std::size_t i = 0; i < extended; ++i) {
    const double e = i < n ? estimate.samples[i] : 0.0;
    target += tmp[i] * tmp[i];
    residual += (e - tmp[i]) * (e - tmp[i]);
  }
  if (residual <= 0.0) return kSdrCapDb;
  if (target <= 0.0) return -kSdrCapDb;
  return std::min(10.0 * std::log10(target / residual), kSdrCapDb);
}

}  // namespace upit
