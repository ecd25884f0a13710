// src/mixing/active_level.cc

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

#include "upit/mixing/active_level.h"

#include <algorithm>
#include <array>
#include <cmath>

#include "upit/error.h"

namespace upit {

ActiveLevel MeasureActiveLevel(const Waveform &w) {
  using P = ActiveLevelParams;
  ValidateWaveform(w, "MeasureActiveLevel");
  Require(w.duration() >= P::kMinDuration - 1e-12, ErrorKind::kInvalidArgument,
          "MeasureActiveLevel: signal shorter than 100 ms");

  double peak = 0.0;
  for (double v : w.samples) peak = std::max(peak, std::abs(v));
  Require(peak > 0.0, ErrorKind::kNoActiveSpeech,
          "MeasureActiveLevel: signal is identically zero");

  const double fs = w.sample_rate;
  const double g = std::exp(-1.0 / (fs * P::kTimeConstant));
  const auto hangover = static_cast<long>(std::ceil(fs * P::kHangover));

  std::array<double, P::kNumThresholds> thresholds;
  for (int j = 0; j < P::kNumThresholds; ++j) {
    thresholds[j] = std::ldexp(1.0, j - (P::kNumThresholds - 1));
  }
  std::array<long, P::kNumThresholds> count{};
  std::array<long, P::kNumThresholds> hang;
  hang.fill(hangover);

  const double inv_peak = 1.0 / peak;
  double sq = 0.0, p = 0.0, q = 0.0;
  for (double v : w.samples) {
    const double x = v * inv_peak;
    sq += x * x;
    p = g * p + (1.0 - g) * std::abs(x);
    q = g * q + (1.0 - g) * p;
    for (int j = 0; j < P::kNumThresholds; ++j) {
      if (q >= thresholds[j]) {
        ++count[j];
        hang[j] = 0;
      } else if (hang[j] < hangover) {
        ++count[j];
        ++hang[j];
      } else {
        break;
      }
    }
  }
  Require(count[0] > 0, ErrorKind::kNoActiveSpeech,
          "MeasureActiveLevel: no active samples");

  auto active_db = [&](int j) { return 10.0 * std::log10(sq / count[j]); };
  auto threshold_db = [&](int j) { return 20.0 * std::log10(thresholds[j]); };

  double level = active_db(0);
  if (level - threshold_db(0) > P::kMarginDb) {
    int last_active = 0;
    bool found = false;
    for (int j = 1; j < P::kNumThresholds && count[j] > 0; ++j) {
      last_active = j;
      const double delta = active_db(j) - threshold_db(j);
      if (delta <= P::kMarginDb) {
        // Linear interpolation of (active level, threshold) between the two
        // ladder rungs bracketing the margin crossing.
        const double delta_prev = active_db(j - 1) - threshold_db(j - 1);
        const double t = (delta_prev - P::kMarginDb) / (delta_prev - delta);
        level = active_db(j - 1) + t * (active_db(j) - active_db(j - 1));
        found = true;
        break;
      }
    }
    if (!found) level = active_db(last_active);
  }

  const double peak_db = 20.0 * std::log10(peak);
  ActiveLevel out;
  out.level_db = level + peak_db;
  out.long_term_db = 10.0 * std::log10(sq / w.size()) + peak_db;
  out.activity = std::pow(10.0, (out.long_term_db - out.level_db) / 10.0);
  return out;
}

}  // namespace upit
