// src/dsp/fft.cc

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

#include "upit/dsp/fft.h"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

#include "upit/error.h"

namespace upit {
namespace {

struct Plans {
  fftw_plan forward;
  fftw_plan inverse;
};

// FFTW planning is not thread safe; execution of an existing plan on fresh
// arrays is.
std::mutex &PlannerMutex() {
  static std::mutex m;
  return m;
}

Plans GetPlans(int n) {
  static std::map<int, Plans> cache;
  std::lock_guard<std::mutex> lock(PlannerMutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  double *in = fftw_alloc_real(n);
  fftw_complex *out = fftw_alloc_complex(n / 2 + 1);
  Plans p;
  p.forward = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE);
  p.inverse = fftw_plan_dft_c2r_1d(n, out, in, FFTW_ESTIMATE);
  fftw_free(in);
  fftw_free(out);
  cache.emplace(n, p);
  return p;
}

}  // namespace

struct RealFft::Impl {
  Plans plans;
  double *real = nullptr;
  fftw_complex *spectrum = nullptr;
};

RealFft::RealFft(int size) : size_(size), impl_(std::make_unique<Impl>()) {
  Require(size > 0, ErrorKind::kInvalidArgument, "RealFft: size must be positive");
  impl_->plans = GetPlans(size);
  impl_->real = fftw_alloc_real(size);
  impl_->spectrum = fftw_alloc_complex(size / 2 + 1);
}

RealFft::~RealFft() {
  fftw_free(impl_->real);
  fftw_free(impl_->spectrum);
}

void RealFft::Forward(std::span<const double> input,
                      std::span<std::complex<double>> spectrum) {
  Require(static_cast<int>(input.size()) <= size_ &&
              static_cast<int>(spectrum.size()) == num_bins(),
          ErrorKind::kDimensionMismatch, "RealFft::Forward: bad buffer sizes");
  std::copy(input.begin(), input.end(), impl_->real);
  std::fill(impl_->real + input.size(), impl_->real + size_, 0.0);
  fftw_execute_dft_r2c(impl_->plans.forward, impl_->real, impl_->spectrum);
  for (int k = 0; k < num_bins(); ++k) {
    spectrum[k] = {impl_->spectrum[k][0], impl_->spectrum[k][1]};
  }
}

void RealFft::Inverse(std::span<const std::complex<double>> spectrum,
                      std::span<double> output) {
  Require(static_cast<int>(spectrum.size()) == num_bins() &&
              static_cast<int>(output.size()) == size_,
          ErrorKind::kDimensionMismatch, "RealFft::Inverse: bad buffer sizes");
  for (int k = 0; k < num_bins(); ++k) {
    impl_->spectrum[k][0] = spectrum[k].real();
    impl_->spectrum[k][1] = spectrum[k].imag();
  }
  // DC and Nyquist of a real signal are real.
  impl_->spectrum[0][1] = 0.0;
  if (size_ % 2 == 0) impl_->spectrum[num_bins() - 1][1] = 0.0;
  fftw_execute_dft_c2r(impl_->plans.inverse, impl_->spectrum, impl_->real);
  const double scale = 1.0 / size_;
  for (int n = 0; n < size_; ++n) output[n] = impl_->real[n] * scale;
}

}  // namespace upit
