// include/upit/metrics/evaluation.h

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

#ifndef UPIT_METRICS_EVALUATION_H_
#define UPIT_METRICS_EVALUATION_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "upit/dsp/waveform.h"
#include "upit/pit/pit_loss.h"

namespace upit {

enum class Metric { kSdr, kEstoi };

const char *MetricName(Metric m);
double Score(Metric m, const Waveform &reference, const Waveform &estimate);

// Best output-to-reference pairing for one metric.
struct MetricOutcome {
  // assignment[t]: output index paired with reference t.
  std::vector<int> assignment;
  // Over the outputs kept (ascending index order): mapping[s] is the
  // reference paired with kept output s.
  Permutation permutation;
  int discarded_output = -1;
  std::vector<double> per_source;  // score of reference t
  double mean = 0.0;
};

// Three outputs against two or three references. With two references the
// output of least energy is taken to be the silent speaker and discarded;
// the remaining outputs are paired with the references by the permutation
// maximising the mean score (ties: lexicographically first).
MetricOutcome EvaluateOutputs(std::span<const Waveform> outputs,
                              std::span<const Waveform> references, Metric metric);

struct EvalResult {
  std::string utterance_id;
  std::string model_id;
  std::string noise_id;
  std::optional<double> snr_db;
  int num_speakers = 0;
  MetricOutcome sdr;
  MetricOutcome estoi;
  std::vector<double> sdr_unprocessed;    // per reference, mixture as estimate
  std::vector<double> estoi_unprocessed;
  double sdr_improvement_db = 0.0;  // mean processed - mean unprocessed
  double estoi_improvement = 0.0;

  double sdr_unprocessed_mean() const;
  double estoi_unprocessed_mean() const;
};

// Scores separated outputs on both metrics; improvements are relative to the
// unprocessed mixture, differenced per utterance.
EvalResult EvaluateSeparation(std::span<const Waveform> outputs,
                              std::span<const Waveform> references,
                              const Waveform &mixture);

}  // namespace upit

#endif  // UPIT_METRICS_EVALUATION_H_
