// include/upit/pipeline/experiment.h

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

#ifndef UPIT_PIPELINE_EXPERIMENT_H_
#define UPIT_PIPELINE_EXPERIMENT_H_

#include <filesystem>
#include <string>
#include <vector>

#include "upit/io/dataset.h"
#include "upit/metrics/evaluation.h"
#include "upit/model/blstm.h"

namespace upit {

// Named dataset recipes: wsj0-2mix-like, wsj0-3mix-like, wsj0-2+3mix-like
// (full-scale counts) and desk (200/40/40, combined composition).
DatasetSpec DatasetPreset(const std::string &name);
std::vector<std::string> DatasetPresetNames();

// Clamped ideal phase-sensitive masks of every stored source applied to the
// mixture and resynthesised with the mixture phase.
std::vector<Waveform> OracleOutputs(const MixtureExample &ex, const StftConfig &stft);

// The reference signals scored against: the real speakers only.
std::vector<Waveform> EvaluationReferences(const MixtureExample &ex);

// Per-utterance results for one split of a materialised dataset, in
// manifest order.
std::vector<EvalResult> EvaluateModel(const BlstmNetwork &net, const std::string &model_id,
                                      const std::filesystem::path &dataset_dir,
                                      const DatasetManifest &manifest,
                                      const std::string &split, int workers = 1);
std::vector<EvalResult> EvaluateOracle(const std::filesystem::path &dataset_dir,
                                       const DatasetManifest &manifest,
                                       const std::string &split, int workers = 1);

// One JSON record per line.
void WriteResults(const std::vector<EvalResult> &results, const std::filesystem::path &path);
std::vector<EvalResult> ReadResults(const std::filesystem::path &path);

}  // namespace upit

#endif  // UPIT_PIPELINE_EXPERIMENT_H_
