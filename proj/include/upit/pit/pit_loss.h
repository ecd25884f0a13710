// include/upit/pit/pit_loss.h

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

#ifndef UPIT_PIT_PIT_LOSS_H_
#define UPIT_PIT_PIT_LOSS_H_

#include <optional>
#include <span>
#include <vector>

#include "upit/dsp/stft.h"

namespace upit {

// Exhaustive permutation search is limited to this many sources.
constexpr int kMaxPermutationSources = 4;

// Output s is paired with target mapping[s]. `frame` is set for a frame-level
// assignment and empty for an utterance-level one.
struct Permutation {
  std::vector<int> mapping;
  std::optional<Eigen::Index> frame;

  static Permutation Identity(int n);
  bool IsValid() const;
  bool operator==(const Permutation &o) const { return mapping == o.mapping; }
};

// All permutations of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> AllPermutations(int n);

// Loss functions take the estimated masks (one K x B grid per output), the
// mixture magnitude r (K x B) and the phase-sensitive targets a_s cos(phi_s)
// (one K x B grid per source, see PhaseSensitiveTarget).

// sum_s || m_s,i o r_i - target_perm(s),i ||^2 for frame i.
double PsaLossFrame(std::span<const Grid> masks, const Grid &r,
                    std::span<const Grid> targets, Eigen::Index frame,
                    const Permutation &perm);

struct FramePitResult {
  double loss = 0.0;
  Permutation permutation;
};

// Minimum of PsaLossFrame over all S! pairings; ties go to the
// lexicographically smallest permutation.
FramePitResult PitFrameLoss(std::span<const Grid> masks, const Grid &r,
                            std::span<const Grid> targets, Eigen::Index frame);

// Single pairing minimising the PSA error summed over the whole utterance.
Permutation UpitPermutation(std::span<const Grid> masks, const Grid &r,
                            std::span<const Grid> targets);

struct UtteranceLoss {
  double total = 0.0;       // raw sum over frames, bins and sources
  double normalized = 0.0;  // total / (K * B * S)
  std::vector<double> per_frame;
};

// Per-frame PSA losses under a fixed utterance-level permutation.
UtteranceLoss UpitLoss(std::span<const Grid> masks, const Grid &r,
                       std::span<const Grid> targets, const Permutation &perm);

// d(total)/d(mask_s) = 2 (m_s o r - target_perm(s)) o r for every output s.
std::vector<Grid> UpitLossGradient(std::span<const Grid> masks, const Grid &r,
                                   std::span<const Grid> targets,
                                   const Permutation &perm);

}  // namespace upit

#endif  // UPIT_PIT_PIT_LOSS_H_
