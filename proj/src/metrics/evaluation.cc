// src/metrics/evaluation.cc

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

#include "upit/metrics/evaluation.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "upit/error.h"
#include "upit/metrics/estoi.h"
#include "upit/metrics/sdr.h"

namespace upit {

const char *MetricName(Metric m) {
  return m == Metric::kSdr ? "SDR" : "ESTOI";
}

double Score(Metric m, const Waveform &reference, const Waveform &estimate) {
  return m == Metric::kSdr ? Sdr(reference, estimate) : Estoi(reference, estimate);
}

MetricOutcome EvaluateOutputs(std::span<const Waveform> outputs,
                              std::span<const Waveform> references, Metric metric) {
  const int num_out = static_cast<int>(outputs.size());
  const int num_ref = static_cast<int>(references.size());
  Require(num_ref >= 1 && num_ref <= num_out && num_out - num_ref <= 1,
          ErrorKind::kDimensionMismatch,
          "EvaluateOutputs: need as many outputs as references, or one more");

  MetricOutcome out;
  std::vector<int> kept(num_out);
  std::iota(kept.begin(), kept.end(), 0);
  if (num_out > num_ref) {
    int least = 0;
    double least_energy = std::numeric_limits<double>::infinity();
    for (int o = 0; o < num_out; ++o) {
      const double e = Energy(outputs[o].view());
      if (e < least_energy) {
        least_energy = e;
        least = o;
      }
    }
    out.discarded_output = least;
    kept.erase(kept.begin() + least);
  }

  std::vector<std::vector<double>> score(num_ref, std::vector<double>(num_ref));
  for (int s = 0; s < num_ref; ++s)
    for (int t = 0; t < num_ref; ++t)
      score[s][t] = Score(metric, references[t], outputs[kept[s]]);

  double best = -std::numeric_limits<double>::infinity();
  for (const auto &mapping : AllPermutations(num_ref)) {
    double sum = 0.0;
    for (int s = 0; s < num_ref; ++s) sum += score[s][mapping[s]];
    if (sum > best) {
      best = sum;
      out.permutation.mapping = mapping;
    }
  }
  out.assignment.assign(num_ref, -1);
  out.per_source.assign(num_ref, 0.0);
  for (int s = 0; s < num_ref; ++s) {
    const int t = out.permutation.mapping[s];
    out.assignment[t] = kept[s];
    out.per_source[t] = score[s][t];
  }
  out.mean = best / num_ref;
  return out;
}

namespace {

double Mean(const std::vector<double> &v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

}  // namespace

double EvalResult::sdr_unprocessed_mean() const { return Mean(sdr_unprocessed); }
double EvalResult::estoi_unprocessed_mean() const { return Mean(estoi_unprocessed); }

EvalResult EvaluateSeparation(std::span<const Waveform> outputs,
                              std::span<const Waveform> references,
                              const Waveform &mixture) {
  EvalResult r;
  r.num_speakers = static_cast<int>(references.size());
  r.sdr = EvaluateOutputs(outputs, references, Metric::kSdr);
  r.estoi = EvaluateOutputs(outputs, references, Metric::kEstoi);
  for (const Waveform &ref : references) {
    r.sdr_unprocessed.push_back(Sdr(ref, mixture));
    r.estoi_unprocessed.push_back(Estoi(ref, mixture));
  }
  r.sdr_improvement_db = r.sdr.mean - r.sdr_unprocessed_mean();
  r.estoi_improvement = r.estoi.mean - r.estoi_unprocessed_mean();
  return r;
}

}  // namespace upit
