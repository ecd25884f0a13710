// src/pit/pit_loss.cc

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

#include "upit/pit/pit_loss.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "upit/error.h"

namespace upit {

Permutation Permutation::Identity(int n) {
  Permutation p;
  p.mapping.resize(n);
  std::iota(p.mapping.begin(), p.mapping.end(), 0);
  return p;
}

bool Permutation::IsValid() const {
  std::vector<bool> seen(mapping.size(), false);
  for (int t : mapping) {
    if (t < 0 || t >= static_cast<int>(mapping.size()) || seen[t]) return false;
    seen[t] = true;
  }
  return true;
}

std::vector<std::vector<int>> AllPermutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> all;
  do {
    all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return all;
}

namespace {

void CheckInputs(std::span<const Grid> masks, const Grid &r,
                 std::span<const Grid> targets) {
  Require(!masks.empty() && masks.size() == targets.size(),
          ErrorKind::kInvalidArgument,
          "PIT loss: need the same nonzero number of masks and targets");
  Require(static_cast<int>(masks.size()) <= kMaxPermutationSources,
          ErrorKind::kInvalidArgument,
          "PIT loss: too many sources for exhaustive permutation search");
  for (std::size_t s = 0; s < masks.size(); ++s) {
    Require(masks[s].rows() == r.rows() && masks[s].cols() == r.cols() &&
                targets[s].rows() == r.rows() && targets[s].cols() == r.cols(),
            ErrorKind::kDimensionMismatch, "PIT loss: shape mismatch");
  }
}

void CheckPermutation(const Permutation &perm, std::size_t n) {
  Require(perm.mapping.size() == n && perm.IsValid(), ErrorKind::kInvalidArgument,
          "PIT loss: invalid permutation");
}

// || m_s,i o r_i - target_t,i ||^2
double PairFrameError(const Grid &mask, const Grid &r, const Grid &target,
                      Eigen::Index i) {
  double acc = 0.0;
  for (Eigen::Index f = 0; f < r.cols(); ++f) {
    const double e = mask(i, f) * r(i, f) - target(i, f);
    acc += e * e;
  }
  return acc;
}

}  // namespace

double PsaLossFrame(std::span<const Grid> masks, const Grid &r,
                    std::span<const Grid> targets, Eigen::Index frame,
                    const Permutation &perm) {
  CheckInputs(masks, r, targets);
  CheckPermutation(perm, masks.size());
  Require(frame >= 0 && frame < r.rows(), ErrorKind::kInvalidArgument,
          "PsaLossFrame: frame out of range");
  double loss = 0.0;
  for (std::size_t s = 0; s < masks.size(); ++s) {
    loss += PairFrameError(masks[s], r, targets[perm.mapping[s]], frame);
  }
  return loss;
}

FramePitResult PitFrameLoss(std::span<const Grid> masks, const Grid &r,
                            std::span<const Grid> targets, Eigen::Index frame) {
  CheckInputs(masks, r, targets);
  Require(frame >= 0 && frame < r.rows(), ErrorKind::kInvalidArgument,
          "PitFrameLoss: frame out of range");
  const int n = static_cast<int>(masks.size());
  // pair[s][t]: error of output s against target t in this frame.
  std::vector<double> pair(n * n);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      pair[s * n + t] = PairFrameError(masks[s], r, targets[t], frame);
    }
  }
  // Seeded with the first permutation so that a NaN loss still yields a
  // valid pairing and propagates to the caller.
  FramePitResult best;
  best.loss = std::numeric_limits<double>::infinity();
  best.permutation = Permutation::Identity(n);
  for (const auto &p : AllPermutations(n)) {
    double loss = 0.0;
    for (int s = 0; s < n; ++s) loss += pair[s * n + p[s]];
    if (loss < best.loss) {
      best.loss = loss;
      best.permutation.mapping = p;
    }
  }
  best.permutation.frame = frame;
  return best;
}

Permutation UpitPermutation(std::span<const Grid> masks, const Grid &r,
                            std::span<const Grid> targets) {
  CheckInputs(masks, r, targets);
  const int n = static_cast<int>(masks.size());
  std::vector<double> pair(n * n, 0.0);
  for (int s = 0; s < n; ++s) {
    const Grid estimate = masks[s] * r;
    for (int t = 0; t < n; ++t) {
      pair[s * n + t] = (estimate - targets[t]).square().sum();
    }
  }
  Permutation best = Permutation::Identity(n);
  double best_loss = std::numeric_limits<double>::infinity();
  for (const auto &p : AllPermutations(n)) {
    double loss = 0.0;
    for (int s = 0; s < n; ++s) loss += pair[s * n + p[s]];
    if (loss < best_loss) {
      best_loss = loss;
      best.mapping = p;
    }
  }
  return best;
}

UtteranceLoss UpitLoss(std::span<const Grid> masks, const Grid &r,
                       std::span<const Grid> targets, const Permutation &perm) {
  CheckInputs(masks, r, targets);
  CheckPermutation(perm, masks.size());
  UtteranceLoss out;
  out.per_frame.resize(static_cast<std::size_t>(r.rows()));
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    double frame_loss = 0.0;
    for (std::size_t s = 0; s < masks.size(); ++s) {
      frame_loss += PairFrameError(masks[s], r, targets[perm.mapping[s]], i);
    }
    out.per_frame[i] = frame_loss;
    out.total += frame_loss;
  }
  const double count =
      static_cast<double>(r.rows()) * r.cols() * static_cast<double>(masks.size());
  out.normalized = count > 0 ? out.total / count : 0.0;
  return out;
}

std::vector<Grid> UpitLossGradient(std::span<const Grid> masks, const Grid &r,
                                   std::span<const Grid> targets,
                                   const Permutation &perm) {
  CheckInputs(masks, r, targets);
  CheckPermutation(perm, masks.size());
  std::vector<Grid> grads;
  grads.reserve(masks.size());
  for (std::size_t s = 0; s < masks.size(); ++s) {
    grads.push_back(2.0 * (masks[s] * r - targets[perm.mapping[s]]) * r);
  }
  return grads;
}

}  // namespace upit
