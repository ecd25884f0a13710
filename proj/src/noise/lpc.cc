// src/noise/lpc.cc

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

#include "upit/noise/lpc.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "upit/error.h"

namespace upit {

double LpcModel::gain() const { return std::sqrt(error_power); }

double LpcModel::PowerResponse(double cycles_per_sample) const {
  const double w = 2.0 * std::numbers::pi * cycles_per_sample;
  std::complex<double> a(1.0, 0.0);
  for (int k = 1; k <= order; ++k) {
    a -= coefficients[k - 1] * std::polar(1.0, -w * k);
  }
  return error_power / std::norm(a);
}

bool LpcModel::IsStable() const {
  for (double k : reflection) {
    if (!(std::abs(k) < 1.0)) return false;
  }
  return true;
}

LpcModel LevinsonDurbin(std::span<const double> r, int order) {
  Require(order >= 1 && static_cast<int>(r.size()) > order,
          ErrorKind::kInvalidArgument, "LevinsonDurbin: need order+1 lags");
  Require(r[0] > 0.0, ErrorKind::kNumeric,
          "LevinsonDurbin: zero autocorrelation at lag 0");
  LpcModel m;
  m.order = order;
  m.coefficients.assign(order, 0.0);
  m.reflection.assign(order, 0.0);
  std::vector<double> prev(order, 0.0);
  double err = r[0];
  for (int i = 1; i <= order; ++i) {
    double acc = r[i];
    for (int j = 1; j < i; ++j) acc -= prev[j - 1] * r[i - j];
    const double k = acc / err;
    m.reflection[i - 1] = k;
    m.coefficients[i - 1] = k;
    for (int j = 1; j < i; ++j) {
      m.coefficients[j - 1] = prev[j - 1] - k * prev[i - j - 1];
    }
    err *= (1.0 - k * k);
    prev = m.coefficients;
  }
  m.error_power = err;
  return m;
}

std::vector<double> Autocorrelation(std::span<const double> x, int max_lag) {
  std::vector<double> r(max_lag + 1, 0.0);
  const std::size_t n = x.size();
  for (int k = 0; k <= max_lag; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) acc += x[i] * x[i + k];
    r[k] = acc / static_cast<double>(n);
  }
  return r;
}

LpcModel FitLpc(std::span<const double> x, int order) {
  Require(order >= 1, ErrorKind::kInvalidArgument, "FitLpc: order must be >= 1");
  Require(x.size() > static_cast<std::size_t>(10 * order),
          ErrorKind::kInvalidArgument, "FitLpc: signal too short for order");
  LpcModel m = LevinsonDurbin(Autocorrelation(x, order), order);
  // The autocorrelation method cannot produce |k| >= 1 for a nonzero signal.
  Require(m.IsStable(), ErrorKind::kNumeric, "FitLpc: unstable fit");
  return m;
}

}  // namespace upit
