// src/noise/noise_synth.cc

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

#include "upit/noise/noise_synth.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "upit/error.h"
#include "upit/util/random.h"

namespace upit {
namespace {

constexpr std::size_t kFilterWarmup = 4096;

void RequireCommonRate(std::span<const Waveform> corpus, const char *what) {
  Require(!corpus.empty(), ErrorKind::kInvalidArgument,
          std::string(what) + ": corpus is empty");
  for (const Waveform &w : corpus) {
    Require(w.sample_rate == corpus.front().sample_rate,
            ErrorKind::kInvalidArgument,
            std::string(what) + ": corpus sample rates differ");
  }
}

}  // namespace

LpcModel FitSsnModel(std::span<const Waveform> corpus, int n_sentences,
                     uint64_t seed) {
  RequireCommonRate(corpus, "FitSsnModel");
  Require(n_sentences >= 1 && static_cast<std::size_t>(n_sentences) <= corpus.size(),
          ErrorKind::kInvalidArgument,
          "FitSsnModel: n_sentences must be in [1, corpus size]");
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  auto engine = MakeEngine(seed, {0x55e1});
  std::shuffle(order.begin(), order.end(), engine);
  std::vector<double> concat;
  for (int i = 0; i < n_sentences; ++i) {
    const auto &s = corpus[order[i]].samples;
    concat.insert(concat.end(), s.begin(), s.end());
  }
  return FitLpc(concat, kSsnLpcOrder);
}

Waveform SynthesizeSsn(const LpcModel &model, double duration_s,
                       int sample_rate, uint64_t seed) {
  Require(duration_s > 0.0 && sample_rate > 0, ErrorKind::kInvalidArgument,
          "SynthesizeSsn: duration and rate must be positive");
  const auto length = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  Require(length > 0, ErrorKind::kInvalidArgument, "SynthesizeSsn: empty output");
  auto engine = MakeEngine(seed, {0x55e2});
  std::normal_distribution<double> gauss(0.0, 1.0);

  const int p = model.order;
  std::vector<double> history(p, 0.0);  // y[n-1], y[n-2], ...
  Waveform out(length, sample_rate);
  const double g = model.gain();
  for (std::size_t n = 0; n < kFilterWarmup + length; ++n) {
    double y = g * gauss(engine);
    for (int k = 0; k < p; ++k) y += model.coefficients[k] * history[k];
    for (int k = p - 1; k > 0; --k) history[k] = history[k - 1];
    if (p > 0) history[0] = y;
    if (n >= kFilterWarmup) out.samples[n - kFilterWarmup] = y;
  }
  const double rms = Rms(out.view());
  Require(rms > 0.0 && std::isfinite(rms), ErrorKind::kNumeric,
          "SynthesizeSsn: degenerate output");
  for (double &v : out.samples) v /= rms;
  return out;
}

Waveform GenerateSsn(std::span<const Waveform> corpus, int n_sentences,
                     double duration_s, uint64_t seed) {
  const LpcModel model = FitSsnModel(corpus, n_sentences, seed);
  return SynthesizeSsn(model, duration_s, corpus.front().sample_rate, seed);
}

Waveform GenerateBabble(std::span<const Waveform> corpus, int n_groups,
                        uint64_t seed) {
  RequireCommonRate(corpus, "GenerateBabble");
  Require(n_groups >= 1 && static_cast<std::size_t>(n_groups) <= corpus.size(),
          ErrorKind::kInvalidArgument,
          "GenerateBabble: every group needs at least one utterance");
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  auto engine = MakeEngine(seed, {0xbb1});
  std::shuffle(order.begin(), order.end(), engine);

  // Group g takes utterances order[start_g, start_{g+1}); sizes differ by at
  // most one.
  std::vector<std::vector<double>> groups(n_groups);
  const std::size_t n = corpus.size();
  for (int g = 0; g < n_groups; ++g) {
    const std::size_t begin = n * g / n_groups;
    const std::size_t end = n * (g + 1) / n_groups;
    for (std::size_t i = begin; i < end; ++i) {
      const auto &s = corpus[order[i]].samples;
      groups[g].insert(groups[g].end(), s.begin(), s.end());
    }
    const double energy = Energy(groups[g]);
    Require(energy > 0.0, ErrorKind::kInvalidArgument,
            "GenerateBabble: a group has zero energy");
    const double scale = 1.0 / std::sqrt(energy);
    for (double &v : groups[g]) v *= scale;
  }
  std::size_t length = groups.front().size();
  for (const auto &grp : groups) length = std::min(length, grp.size());

  Waveform out(length, corpus.front().sample_rate);
  for (const auto &grp : groups) {
    for (std::size_t i = 0; i < length; ++i) out.samples[i] += grp[i];
  }
  return out;
}

std::array<std::size_t, 3> PartitionBoundaries(std::size_t length,
                                               std::array<double, 3> ratios) {
  for (double r : ratios) {
    Require(r > 0.0 && std::isfinite(r), ErrorKind::kInvalidArgument,
            "PartitionNoise: ratios must be positive");
  }
  const double total = ratios[0] + ratios[1] + ratios[2];
  std::array<std::size_t, 3> b{};
  double cumulative = 0.0;
  for (int i = 0; i < 3; ++i) {
    cumulative += ratios[i];
    b[i] = static_cast<std::size_t>(
        std::floor(static_cast<double>(length) * cumulative / total + 1e-9));
  }
  b[2] = std::min(b[2], length);
  Require(b[0] > 0 && b[1] > b[0] && b[2] > b[1], ErrorKind::kInvalidArgument,
          "PartitionNoise: waveform too short for the requested ratios");
  return b;
}

NoisePartition PartitionNoise(const Waveform &w, std::array<double, 3> ratios) {
  ValidateWaveform(w, "PartitionNoise");
  NoisePartition part;
  part.boundaries = PartitionBoundaries(w.size(), ratios);
  auto slice = [&w](std::size_t a, std::size_t b) {
    return Waveform(std::vector<double>(w.samples.begin() + a, w.samples.begin() + b),
                    w.sample_rate);
  };
  part.train = slice(0, part.boundaries[0]);
  part.validation = slice(part.boundaries[0], part.boundaries[1]);
  part.test = slice(part.boundaries[1], part.boundaries[2]);
  return part;
}

}  // namespace upit
