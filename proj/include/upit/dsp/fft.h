// include/upit/dsp/fft.h

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

#ifndef UPIT_DSP_FFT_H_
#define UPIT_DSP_FFT_H_

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace upit {

// Real-input DFT of a fixed size backed by FFTW. Each instance owns its
// scratch buffers, so separate instances may run on separate threads; plans
// are created once per size and shared.
class RealFft {
 public:
  explicit RealFft(int size);
  ~RealFft();
  RealFft(const RealFft &) = delete;
  RealFft &operator=(const RealFft &) = delete;

  int size() const { return size_; }
  int num_bins() const { return size_ / 2 + 1; }

  // input.size() <= size(); the tail is zero-padded. Unnormalized.
  void Forward(std::span<const double> input,
               std::span<std::complex<double>> spectrum);
  // Inverse of Forward including the 1/size factor. Writes size() samples.
  void Inverse(std::span<const std::complex<double>> spectrum,
               std::span<double> output);

 private:
  struct Impl;
  int size_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace upit

#endif  // UPIT_DSP_FFT_H_
