// tests/oracles.h

// Copyright 2026  upitsep authors

// See ../COPYING for clarification regarding multiple authors
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

#ifndef UPIT_TESTS_ORACLES_H_
#define UPIT_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "test_util.h"
#include "upit/dsp/stft.h"
#include "upit/metrics/evaluation.h"
#include "upit/metrics/sdr.h"

namespace upit::testing {

// Lexicographic permutations generated by recursion, independent of the
// library's enumeration.
inline void Permute(std::vector<int> &prefix, std::vector<bool> &used, int n,
                    std::vector<std::vector<int>> &out) {
  if (static_cast<int>(prefix.size()) == n) {
    out.push_back(prefix);
    return;
  }
  for (int v = 0; v < n; ++v) {
    if (used[v]) continue;
    used[v] = true;
    prefix.push_back(v);
    Permute(prefix, used, n, out);
    prefix.pop_back();
    used[v] = false;
  }
}

inline std::vector<std::vector<int>> Permutations(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  std::vector<bool> used(n, false);
  Permute(prefix, used, n, out);
  return out;
}

struct BruteResult {
  double loss = std::numeric_limits<double>::infinity();
  std::vector<int> mapping;
};

// Per-source sums over bins, accumulated source by source.
inline double FrameError(const std::vector<Grid> &masks, const Grid &r,
                         const std::vector<Grid> &targets, Eigen::Index i,
                         const std::vector<int> &p) {
  double loss = 0.0;
  for (std::size_t s = 0; s < masks.size(); ++s) {
    double acc = 0.0;
    for (Eigen::Index f = 0; f < r.cols(); ++f) {
      const double e = masks[s](i, f) * r(i, f) - targets[p[s]](i, f);
      acc += e * e;
    }
    loss += acc;
  }
  return loss;
}

inline BruteResult BruteFramePit(const std::vector<Grid> &masks, const Grid &r,
                                 const std::vector<Grid> &targets, Eigen::Index i) {
  BruteResult best;
  for (const auto &p : Permutations(static_cast<int>(masks.size()))) {
    const double loss = FrameError(masks, r, targets, i, p);
    if (loss < best.loss) best = {loss, p};
  }
  return best;
}

inline BruteResult BruteUpit(const std::vector<Grid> &masks, const Grid &r,
                             const std::vector<Grid> &targets) {
  BruteResult best;
  for (const auto &p : Permutations(static_cast<int>(masks.size()))) {
    double loss = 0.0;
    for (Eigen::Index i = 0; i < r.rows(); ++i) loss += FrameError(masks, r, targets, i, p);
    if (loss < best.loss) best = {loss, p};
  }
  return best;
}

struct PitInstance {
  std::vector<Grid> masks;
  Grid r;
  std::vector<Grid> targets;
};

// Random instance whose frames favour different pairings: each frame's
// targets are a shuffled, perturbed copy of the masked mixture.
inline PitInstance RandomPitInstance(int sources, Eigen::Index frames,
                                     Eigen::Index bins, std::mt19937_64 &eng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g(0.0, 0.3);
  PitInstance inst;
  inst.r = Grid(frames, bins);
  for (Eigen::Index k = 0; k < inst.r.size(); ++k) inst.r.data()[k] = 0.1 + 2.0 * u(eng);
  for (int s = 0; s < sources; ++s) {
    Grid m(frames, bins);
    for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = 1.5 * u(eng);
    inst.masks.push_back(m);
    inst.targets.push_back(Grid::Zero(frames, bins));
  }
  std::vector<int> p(sources);
  std::iota(p.begin(), p.end(), 0);
  for (Eigen::Index i = 0; i < frames; ++i) {
    std::shuffle(p.begin(), p.end(), eng);
    for (int s = 0; s < sources; ++s) {
      for (Eigen::Index f = 0; f < bins; ++f)
        inst.targets[p[s]](i, f) = inst.masks[s](i, f) * inst.r(i, f) + g(eng);
    }
  }
  return inst;
}

// Noise at `snr_db` below `ref`, orthogonal to every delayed copy of it that
// the distortion filter may use: the least-squares projection onto those
// copies is removed explicitly.
inline Waveform OrthogonalNoise(const Waveform &ref, double snr_db, uint64_t seed, int taps) {
  const std::size_t n = ref.size();
  const std::size_t m = n + taps - 1;
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(m, taps);
  for (int d = 0; d < taps; ++d)
    for (std::size_t t = 0; t < n; ++t) basis(t + d, d) = ref.samples[t];
  const Waveform white = WhiteNoise(n, seed);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
  for (std::size_t t = 0; t < n; ++t) e[t] = white.samples[t];
  // Only the first n samples are kept, so project within that support.
  Eigen::MatrixXd b = basis.topRows(n);
  Eigen::VectorXd en = e.head(n);
  en -= b * b.colPivHouseholderQr().solve(en);
  const double scale =
      std::sqrt(Energy(ref.samples) / en.squaredNorm() * std::pow(10.0, -snr_db / 10.0));
  Waveform out(n, ref.sample_rate);
  for (std::size_t t = 0; t < n; ++t) out.samples[t] = scale * en[t];
  return out;
}

struct BruteOutcome {
  std::vector<int> assignment;
  double mean = -INFINITY;
  int discarded = -1;
};

inline BruteOutcome BruteEvaluate(const std::vector<Waveform> &outputs,
                           const std::vector<Waveform> &refs, Metric metric) {
  std::vector<int> kept;
  BruteOutcome best;
  if (refs.size() < outputs.size()) {
    int quiet = 0;
    for (int s = 1; s < static_cast<int>(outputs.size()); ++s)
      if (Energy(outputs[s].samples) < Energy(outputs[quiet].samples)) quiet = s;
    best.discarded = quiet;
    for (int s = 0; s < static_cast<int>(outputs.size()); ++s)
      if (s != quiet) kept.push_back(s);
  } else {
    for (int s = 0; s < static_cast<int>(outputs.size()); ++s) kept.push_back(s);
  }
  // score[t][k]: reference t against kept output k, each computed once.
  std::vector<std::vector<double>> score(refs.size());
  for (std::size_t t = 0; t < refs.size(); ++t)
    for (int k : kept) score[t].push_back(Score(metric, refs[t], outputs[k]));
  for (const auto &p : Permutations(static_cast<int>(refs.size()))) {
    // p[t]: index into `kept` for reference t.
    double mean = 0.0;
    for (std::size_t t = 0; t < refs.size(); ++t) mean += score[t][p[t]];
    mean /= static_cast<double>(refs.size());
    if (mean > best.mean) {
      best.mean = mean;
      best.assignment.clear();
      for (std::size_t t = 0; t < refs.size(); ++t) best.assignment.push_back(kept[p[t]]);
    }
  }
  return best;
}

}  // namespace upit::testing

#endif  // UPIT_TESTS_ORACLES_H_
