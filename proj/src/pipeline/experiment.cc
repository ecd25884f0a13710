// src/pipeline/experiment.cc

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

#include "upit/pipeline/experiment.h"

#include <fstream>

#include <nlohmann/json.hpp>

#include "upit/error.h"
#include "upit/model/separate.h"
#include "upit/metrics/report.h"
#include "upit/pit/masks.h"
#include "upit/util/parallel.h"

namespace upit {

namespace {

using nlohmann::json;

void Tag(EvalResult &r, const MixtureRecipe &recipe, const std::string &model_id) {
  r.utterance_id = recipe.id;
  r.model_id = model_id;
  r.noise_id = recipe.noise_id.value_or("");
  r.snr_db = recipe.snr_db;
}

template <typename Outputs>
std::vector<EvalResult> EvaluateSplit(const std::filesystem::path &dataset_dir,
                                      const DatasetManifest &manifest,
                                      const std::string &split, const std::string &model_id,
                                      int workers, Outputs outputs) {
  const std::vector<const MixtureRecipe *> recipes = manifest.InSplit(split);
  Require(!recipes.empty(), ErrorKind::kInvalidArgument,
          "dataset has no " + split + " mixtures");
  std::vector<EvalResult> results(recipes.size());
  ParallelFor(recipes.size(), workers, [&](std::size_t k) {
    const MixtureExample ex = LoadExample(dataset_dir, *recipes[k]);
    const std::vector<Waveform> refs = EvaluationReferences(ex);
    results[k] = EvaluateSeparation(outputs(ex), refs, ex.mixture);
    Tag(results[k], *recipes[k], model_id);
  });
  return results;
}

json OutcomeToJson(const MetricOutcome &o) {
  return json{{"assignment", o.assignment},
              {"permutation", o.permutation.mapping},
              {"discarded_output", o.discarded_output},
              {"per_source", o.per_source},
              {"mean", o.mean}};
}

MetricOutcome OutcomeFromJson(const json &j) {
  MetricOutcome o;
  o.assignment = j.at("assignment").get<std::vector<int>>();
  o.permutation.mapping = j.at("permutation").get<std::vector<int>>();
  o.discarded_output = j.at("discarded_output").get<int>();
  o.per_source = j.at("per_source").get<std::vector<double>>();
  o.mean = j.at("mean").get<double>();
  return o;
}

}  // namespace

DatasetSpec DatasetPreset(const std::string &name) {
  DatasetSpec s;
  s.name = name;
  if (name == "wsj0-2mix-like" || name == "wsj0-3mix-like") {
    s.composition =
        name == "wsj0-2mix-like" ? Composition::kTwoSpeaker : Composition::kThreeSpeaker;
    s.num_train = 20000;
    s.num_validation = 5000;
    s.num_test = 5000;
  } else if (name == "wsj0-2+3mix-like") {
    s.composition = Composition::kTwoPlusThree;
    s.num_train = 40000;
    s.num_validation = 10000;
    s.num_test = 10000;
  } else if (name == "desk") {
    s.composition = Composition::kTwoPlusThree;
    s.num_train = 200;
    s.num_validation = 40;
    s.num_test = 40;
  } else {
    Fail(ErrorKind::kInvalidArgument, "unknown dataset preset: " + name);
  }
  return s;
}

std::vector<std::string> DatasetPresetNames() {
  return {"wsj0-2mix-like", "wsj0-3mix-like", "wsj0-2+3mix-like", "desk"};
}

std::vector<Waveform> OracleOutputs(const MixtureExample &ex, const StftConfig &stft) {
  const ComplexSpectrogram mix = Stft(ex.mixture, stft);
  const MagnitudeSpectrogram mag = mix.Magnitude();
  const PhaseSpectrogram phase = mix.Phase();
  std::vector<Grid> masks;
  for (const Waveform &s : ex.sources) {
    const ComplexSpectrogram spec = Stft(s, stft);
    const PhaseDifference phi = ComputePhaseDifference(phase, spec.Phase());
    masks.push_back(ClampOracleMask(IdealPhaseSensitiveMask(spec.Magnitude(), phi, mag)).frames);
  }
  return ResynthesizeWithMixturePhase(mix, masks);
}

std::vector<Waveform> EvaluationReferences(const MixtureExample &ex) {
  const int n = ex.recipe.num_real_sources();
  Require(n >= 1 && static_cast<int>(ex.sources.size()) >= n, ErrorKind::kDimensionMismatch,
          "example " + ex.recipe.id + " lacks its sources");
  return std::vector<Waveform>(ex.sources.begin(), ex.sources.begin() + n);
}

std::vector<EvalResult> EvaluateModel(const BlstmNetwork &net, const std::string &model_id,
                                      const std::filesystem::path &dataset_dir,
                                      const DatasetManifest &manifest,
                                      const std::string &split, int workers) {
  return EvaluateSplit(dataset_dir, manifest, split, model_id, workers,
                       [&](const MixtureExample &ex) {
                         return Separate(net, ex.mixture, manifest.spec.stft);
                       });
}

std::vector<EvalResult> EvaluateOracle(const std::filesystem::path &dataset_dir,
                                       const DatasetManifest &manifest,
                                       const std::string &split, int workers) {
  return EvaluateSplit(dataset_dir, manifest, split, kOracleModelId, workers,
                       [&](const MixtureExample &ex) {
                         return OracleOutputs(ex, manifest.spec.stft);
                       });
}

void WriteResults(const std::vector<EvalResult> &results,
                  const std::filesystem::path &path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  Require(static_cast<bool>(out), ErrorKind::kMissingInput,
          "cannot write " + path.string());
  for (const EvalResult &r : results) {
    out << json{{"utterance_id", r.utterance_id},
                {"model_id", r.model_id},
                {"noise_id", r.noise_id},
                {"snr_db", r.snr_db ? json(*r.snr_db) : json(nullptr)},
                {"num_speakers", r.num_speakers},
                {"sdr", OutcomeToJson(r.sdr)},
                {"estoi", OutcomeToJson(r.estoi)},
                {"sdr_unprocessed", r.sdr_unprocessed},
                {"estoi_unprocessed", r.estoi_unprocessed},
                {"sdr_improvement_db", r.sdr_improvement_db},
                {"estoi_improvement", r.estoi_improvement}}
               .dump()
        << "\n";
  }
}

std::vector<EvalResult> ReadResults(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kMissingInput, "cannot open results " + path.string());
  std::vector<EvalResult> out;
  std::string line;
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json j = json::parse(line);
      EvalResult r;
      r.utterance_id = j.at("utterance_id").get<std::string>();
      r.model_id = j.at("model_id").get<std::string>();
      r.noise_id = j.at("noise_id").get<std::string>();
      if (!j.at("snr_db").is_null()) r.snr_db = j.at("snr_db").get<double>();
      r.num_speakers = j.at("num_speakers").get<int>();
      r.sdr = OutcomeFromJson(j.at("sdr"));
      r.estoi = OutcomeFromJson(j.at("estoi"));
      r.sdr_unprocessed = j.at("sdr_unprocessed").get<std::vector<double>>();
      r.estoi_unprocessed = j.at("estoi_unprocessed").get<std::vector<double>>();
      r.sdr_improvement_db = j.at("sdr_improvement_db").get<double>();
      r.estoi_improvement = j.at("estoi_improvement").get<double>();
      out.push_back(std::move(r));
    }
  } catch (const json::exception &ex) {
    Fail(ErrorKind::kCorruptData, "results " + path.string() + ": " + ex.what());
  }
  return out;
}

}  // namespace upit
