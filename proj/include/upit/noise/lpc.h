// include/upit/noise/lpc.h

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

#ifndef UPIT_NOISE_LPC_H_
#define UPIT_NOISE_LPC_H_

#include <span>
#include <vector>

namespace upit {

// All-pole model x[n] = sum_k a_k x[n-k] + e[n], A(z) = 1 - sum_k a_k z^-k.
struct LpcModel {
  int order = 0;
  std::vector<double> coefficients;  // a_1 .. a_p
  std::vector<double> reflection;    // k_1 .. k_p from the recursion
  double error_power = 0.0;          // per-sample prediction error power

  double gain() const;
  // |gain / A(e^{jw})|^2 at normalised frequency `cycles_per_sample`.
  double PowerResponse(double cycles_per_sample) const;
  // True when every reflection coefficient has magnitude < 1.
  bool IsStable() const;
};

// Levinson-Durbin recursion on autocorrelation lags r[0..order].
// Throws kNumeric when r[0] <= 0.
LpcModel LevinsonDurbin(std::span<const double> autocorrelation, int order);

// Biased autocorrelation r[k] = (1/N) sum_n x[n] x[n+k], k = 0..max_lag.
std::vector<double> Autocorrelation(std::span<const double> x, int max_lag);

// Autocorrelation-method LPC. Requires x.size() > 10 * order.
LpcModel FitLpc(std::span<const double> x, int order);

}  // namespace upit

#endif  // UPIT_NOISE_LPC_H_
