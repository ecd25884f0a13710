// tools/upit_cli.cc

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

// upit: command-line front end for corpus synthesis, dataset construction,
// uPIT training, separation and evaluation.
//
// Exit codes: 0 success, 2 usage error, 3 missing input, 4 numeric failure,
// 1 any other failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "upit/error.h"
#include "upit/io/catalog.h"
#include "upit/io/dataset.h"
#include "upit/io/noise_manifest.h"
#include "upit/io/synthetic_speech.h"
#include "upit/io/wav.h"
#include "upit/metrics/report.h"
#include "upit/model/checkpoint.h"
#include "upit/model/presets.h"
#include "upit/model/separate.h"
#include "upit/model/trainer.h"
#include "upit/noise/noise_synth.h"
#include "upit/pipeline/experiment.h"

namespace fs = std::filesystem;

namespace upit {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMissingInput = 3;
constexpr int kExitNumeric = 4;

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kDimensionMismatch:
      return kExitUsage;
    case ErrorKind::kMissingInput:
      return kExitMissingInput;
    case ErrorKind::kNumeric:
      return kExitNumeric;
    default:
      return kExitFailure;
  }
}

void Log(const std::string &msg) { std::cerr << "upit: " << msg << std::endl; }

fs::path CatalogPath(const fs::path &corpus) {
  if (fs::is_directory(corpus)) return corpus / kCatalogFileName;
  return corpus;
}

CorpusCatalog OpenCatalog(const fs::path &corpus) {
  const fs::path path = CatalogPath(corpus);
  Require(fs::exists(path), ErrorKind::kMissingInput,
          "corpus catalog not found: " + path.string());
  return ReadCatalog(path);
}

void WriteText(const fs::path &path, const std::string &text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  Require(static_cast<bool>(out), ErrorKind::kMissingInput, "cannot write " + path.string());
  out << text;
}

struct SynthCorpusArgs {
  fs::path out;
  SyntheticCorpusSpec spec;
};

void RunSynthCorpus(const SynthCorpusArgs &a) {
  const CorpusCatalog c = GenerateSyntheticCorpus(a.spec, a.out);
  Log("wrote " + std::to_string(c.entries.size()) + " utterances to " + a.out.string());
  std::cout << (a.out / kCatalogFileName).string() << "\n";
}

struct SynthNoiseArgs {
  std::string type;
  fs::path corpus;
  fs::path input;
  fs::path out;
  std::string id;
  uint64_t seed = 1;
  int sentences = 100;
  int groups = 6;
  double duration_s = 3000.0;
};

void RunSynthNoise(const SynthNoiseArgs &a) {
  NoiseRecord rec;
  rec.noise_id = a.id.empty() ? a.type : a.id;
  rec.type = a.type;
  rec.seed = a.seed;
  Waveform noise;
  if (a.type == "file") {
    Require(!a.input.empty(), ErrorKind::kInvalidArgument, "--type file needs --input");
    noise = ReadWav(a.input);
    rec.corpus_id = a.input.filename().string();
  } else {
    Require(!a.corpus.empty(), ErrorKind::kInvalidArgument,
            "--type " + a.type + " needs --corpus");
    const CorpusCatalog catalog = OpenCatalog(a.corpus);
    rec.corpus_id = catalog.corpus_id;
    const std::vector<Waveform> utts = catalog.LoadAll();
    if (a.type == "ssn") {
      rec.n_sentences = std::min<int>(a.sentences, utts.size());
      noise = GenerateSsn(utts, rec.n_sentences, a.duration_s, a.seed);
    } else {
      rec.n_groups = a.groups;
      noise = GenerateBabble(utts, a.groups, a.seed);
    }
  }
  const fs::path path = SaveNoise(rec, noise, a.out);
  Log("wrote " + rec.noise_id + " (" + std::to_string(noise.duration()) + " s)");
  std::cout << path.string() << "\n";
}

struct MakeMixturesArgs {
  std::string preset = "desk";
  fs::path corpus;
  std::vector<fs::path> noises;
  fs::path out;
  std::optional<uint64_t> seed;
  std::optional<int> train, validation, test;
  int workers = 1;
};

void RunMakeMixtures(const MakeMixturesArgs &a, const std::string &config_echo) {
  DatasetSpec spec = DatasetPreset(a.preset);
  if (a.seed) spec.seed = *a.seed;
  if (a.train) spec.num_train = *a.train;
  if (a.validation) spec.num_validation = *a.validation;
  if (a.test) spec.num_test = *a.test;
  const CorpusCatalog catalog = OpenCatalog(a.corpus);
  std::map<std::string, NoiseSource> noises;
  for (const fs::path &p : a.noises) {
    NoiseSource n = LoadNoise(p);
    const std::string id = n.record.noise_id;
    Require(noises.emplace(id, std::move(n)).second, ErrorKind::kInvalidArgument,
            "noise id given twice: " + id);
  }
  DatasetManifest m = BuildManifest(catalog, noises, spec);
  m.config_echo = config_echo;
  const auto index = Materialize(m, catalog, noises, a.out, {a.workers});
  Log("materialized " + std::to_string(m.recipes.size()) + " mixtures (" +
      std::to_string(index.size()) + " files) in " + a.out.string());
  std::cout << (a.out / kManifestFileName).string() << "\n";
}

struct TrainArgs {
  std::string preset = "desk";
  fs::path data;
  fs::path out;
  uint64_t seed = 1;
  std::optional<int> epochs;
  std::optional<double> lr;
  std::optional<double> dropout;
  int workers = 1;
};

void RunTrain(const TrainArgs &a, const std::string &config_echo) {
  const ModelPreset &preset = FindModelPreset(a.preset);
  const DatasetManifest m = ReadManifest(a.data / kManifestFileName);
  if (m.spec.composition != preset.composition)
    Log(std::string("warning: preset expects ") + CompositionName(preset.composition) +
        " data, dataset is " + CompositionName(m.spec.composition));
  BlstmConfig net_cfg = preset.network;
  if (a.dropout) net_cfg.dropout_rate = *a.dropout;
  TrainSchedule schedule = preset.schedule;
  schedule.seed = a.seed;
  if (a.epochs) schedule.max_epochs = *a.epochs;
  if (a.lr) schedule.lr_initial = *a.lr;

  const auto train = LoadTrainingSet(a.data, m, "train", a.workers);
  const auto validation = LoadTrainingSet(a.data, m, "validation", a.workers);
  for (const auto &u : train)
    Require(static_cast<int>(u.targets.size()) == net_cfg.output_sources,
            ErrorKind::kInvalidArgument,
            "preset " + a.preset + " has " + std::to_string(net_cfg.output_sources) +
                " outputs but mixture " + u.id + " has " +
                std::to_string(u.targets.size()) + " sources");

  BlstmNetwork net(net_cfg);
  net.Initialize(a.seed);
  Log("training " + a.preset + " (" + std::to_string(net_cfg.ParameterCount()) +
      " parameters) on " + std::to_string(train.size()) + " mixtures");
  std::cout << "epoch,learning_rate,train_loss,validation_loss\n";
  TrainOptions opts;
  opts.workers = a.workers;
  opts.on_epoch = [](const EpochRecord &r) {
    char line[160];
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g", r.epoch, r.learning_rate,
                  r.train_loss, r.validation_loss);
    std::cout << line << std::endl;
  };
  const TrainResult result = Train(net, train, validation, schedule, opts);
  Log("stopped: " + result.stop_reason);

  fs::create_directories(a.out);
  SaveCheckpoint(Checkpoint{a.preset, net, schedule, result.state}, a.out / "model.ckpt");
  std::string csv = "epoch,learning_rate,train_loss,validation_loss\n";
  for (const EpochRecord &r : result.history) {
    char line[160];
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g\n", r.epoch, r.learning_rate,
                  r.train_loss, r.validation_loss);
    csv += line;
  }
  WriteText(a.out / "history.csv", csv);
  WriteText(a.out / "config.toml", config_echo);
}

struct SeparateArgs {
  fs::path model;
  fs::path input;
  fs::path out;
};

void RunSeparate(const SeparateArgs &a) {
  const Checkpoint ckpt = LoadCheckpoint(a.model);
  const Waveform mix = ReadWav(a.input);
  const std::vector<Waveform> outs = Separate(ckpt.network, mix);
  fs::create_directories(a.out);
  for (std::size_t s = 0; s < outs.size(); ++s) {
    const fs::path p = a.out / ("s" + std::to_string(s + 1) + ".wav");
    WriteWav(outs[s], p);
    std::cout << p.string() << "\n";
  }
}

struct OracleArgs {
  fs::path data;
  std::string split = "test";
  fs::path results;
  int workers = 1;
};

void RunOracle(const OracleArgs &a) {
  const DatasetManifest m = ReadManifest(a.data / kManifestFileName);
  const auto results = EvaluateOracle(a.data, m, a.split, a.workers);
  WriteResults(results, a.results);
  Report report;
  report.Add(results);
  std::cout << report.RenderText();
}

struct EvaluateArgs {
  fs::path data;
  std::string split = "test";
  std::vector<fs::path> models;
  std::vector<fs::path> results;
  bool oracle = false;
  fs::path out;
  int workers = 1;
};

void RunEvaluate(const EvaluateArgs &a) {
  Require(!a.models.empty() || !a.results.empty() || a.oracle, ErrorKind::kInvalidArgument,
          "evaluate needs --model, --results or --oracle");
  std::vector<EvalResult> all;
  for (const fs::path &p : a.results) {
    const auto r = ReadResults(p);
    all.insert(all.end(), r.begin(), r.end());
  }
  if (!a.models.empty() || a.oracle) {
    Require(!a.data.empty(), ErrorKind::kInvalidArgument, "--data is required");
    const DatasetManifest m = ReadManifest(a.data / kManifestFileName);
    if (a.oracle) {
      const auto r = EvaluateOracle(a.data, m, a.split, a.workers);
      all.insert(all.end(), r.begin(), r.end());
    }
    for (const fs::path &p : a.models) {
      const Checkpoint ckpt = LoadCheckpoint(p);
      Log("evaluating " + ckpt.model_id);
      const auto r = EvaluateModel(ckpt.network, ckpt.model_id, a.data, m, a.split, a.workers);
      all.insert(all.end(), r.begin(), r.end());
    }
  }
  Report report;
  report.Add(all);
  const std::string text = report.RenderText();
  if (!a.out.empty()) {
    WriteResults(all, a.out / "results.jsonl");
    WriteText(a.out / "report.txt", text);
    WriteText(a.out / "report.csv", report.RenderDelimited());
  }
  std::cout << text;
}

int Main(int argc, char **argv) {
  CLI::App app{"Utterance-level PIT speech separation toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "TOML/INI config file; flags override it");

  SynthCorpusArgs corpus;
  auto *sc = app.add_subcommand("synth-corpus", "Generate a synthetic speech corpus");
  sc->add_option("--out", corpus.out, "Output directory")->required();
  sc->add_option("--corpus-id", corpus.spec.corpus_id, "Corpus identifier");
  sc->add_option("--train-speakers", corpus.spec.train_speakers,
                 "Speakers shared by train and validation");
  sc->add_option("--test-speakers", corpus.spec.test_speakers, "Held-out test speakers");
  sc->add_option("--utterances", corpus.spec.utterances_per_speaker, "Utterances per speaker");
  sc->add_option("--min-duration", corpus.spec.min_duration_s, "Seconds");
  sc->add_option("--max-duration", corpus.spec.max_duration_s, "Seconds");
  sc->add_option("--seed", corpus.spec.seed);

  SynthNoiseArgs noise;
  auto *sn = app.add_subcommand("synth-noise", "Synthesize SSN/BBL or partition a noise file");
  sn->add_option("--type", noise.type, "ssn, bbl or file")
      ->required()
      ->check(CLI::IsMember({"ssn", "bbl", "file"}));
  sn->add_option("--corpus", noise.corpus, "Corpus directory or catalog file");
  sn->add_option("--input", noise.input, "Noise WAV for --type file");
  sn->add_option("--out", noise.out, "Output directory")->required();
  sn->add_option("--id", noise.id, "Noise id (default: the type)");
  sn->add_option("--seed", noise.seed);
  sn->add_option("--sentences", noise.sentences, "SSN: sentences for the LPC fit");
  sn->add_option("--groups", noise.groups, "BBL: number of talker groups")
      ->check(CLI::PositiveNumber);
  sn->add_option("--duration", noise.duration_s, "SSN: seconds")->check(CLI::PositiveNumber);

  MakeMixturesArgs mix;
  auto *mm = app.add_subcommand("make-mixtures", "Build and materialize a dataset");
  mm->add_option("--preset", mix.preset, "Dataset preset")
      ->check(CLI::IsMember(DatasetPresetNames()));
  mm->add_option("--corpus", mix.corpus, "Corpus directory or catalog file")->required();
  mm->add_option("--noise", mix.noises, "Noise record (repeatable)");
  mm->add_option("--out", mix.out, "Output directory")->required();
  mm->add_option("--seed", mix.seed);
  mm->add_option("--train", mix.train, "Override training mixture count");
  mm->add_option("--validation", mix.validation, "Override validation mixture count");
  mm->add_option("--test", mix.test, "Override test mixture count");
  mm->add_option("--workers", mix.workers)->check(CLI::PositiveNumber);

  std::vector<std::string> model_ids;
  for (const ModelPreset &p : ModelPresets()) model_ids.push_back(p.id);
  TrainArgs train;
  auto *tr = app.add_subcommand("train", "Train a BLSTM with the uPIT loss");
  tr->add_option("--preset", train.preset, "Model preset")->check(CLI::IsMember(model_ids));
  tr->add_option("--data", train.data, "Materialized dataset directory")->required();
  tr->add_option("--out", train.out, "Output directory")->required();
  tr->add_option("--seed", train.seed);
  tr->add_option("--epochs", train.epochs, "Override maximum epochs");
  tr->add_option("--lr", train.lr, "Override initial learning rate");
  tr->add_option("--dropout", train.dropout, "Override dropout rate");
  tr->add_option("--workers", train.workers)->check(CLI::PositiveNumber);

  SeparateArgs sep;
  auto *sp = app.add_subcommand("separate", "Separate a mixture WAV");
  sp->add_option("--model", sep.model, "Checkpoint")->required();
  sp->add_option("--input", sep.input, "Mixture WAV")->required();
  sp->add_option("--out", sep.out, "Output directory")->required();

  OracleArgs oracle;
  auto *orc = app.add_subcommand("oracle", "Evaluate ideal phase-sensitive masks");
  orc->add_option("--data", oracle.data, "Materialized dataset directory")->required();
  orc->add_option("--split", oracle.split)->check(CLI::IsMember({"train", "validation", "test"}));
  orc->add_option("--results", oracle.results, "Per-utterance results (JSON lines)")
      ->required();
  orc->add_option("--workers", oracle.workers)->check(CLI::PositiveNumber);

  EvaluateArgs eval;
  auto *ev = app.add_subcommand("evaluate", "Score models and emit the report grid");
  ev->add_option("--data", eval.data, "Materialized dataset directory");
  ev->add_option("--split", eval.split)->check(CLI::IsMember({"train", "validation", "test"}));
  ev->add_option("--model", eval.models, "Checkpoint (repeatable)");
  ev->add_option("--results", eval.results, "Precomputed results (repeatable)");
  ev->add_flag("--oracle", eval.oracle, "Include the IPSF column");
  ev->add_option("--out", eval.out, "Directory for results.jsonl, report.txt, report.csv");
  ev->add_option("--workers", eval.workers)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::FileError &e) {
    app.exit(e);
    return kExitMissingInput;
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  // Options left unset (preset-dependent overrides) are omitted.
  std::string config_echo;
  {
    std::istringstream lines(app.get_subcommands().front()->config_to_str(true, false));
    for (std::string line; std::getline(lines, line);) {
      if (!line.ends_with("=\"\"")) config_echo += line + "\n";
    }
  }
  try {
    if (*sc) RunSynthCorpus(corpus);
    if (*sn) RunSynthNoise(noise);
    if (*mm) RunMakeMixtures(mix, config_echo);
    if (*tr) RunTrain(train, config_echo);
    if (*sp) RunSeparate(sep);
    if (*orc) RunOracle(oracle);
    if (*ev) RunEvaluate(eval);
  } catch (const Error &e) {
    Log(std::string("error: ") + e.what());
    return ExitCodeFor(e.kind());
  } catch (const std::exception &e) {
    Log(std::string("error: ") + e.what());
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace
}  // namespace upit

int main(int argc, char **argv) { return upit::Main(argc, argv); }
