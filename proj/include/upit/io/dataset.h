// include/upit/io/dataset.h

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

#ifndef UPIT_IO_DATASET_H_
#define UPIT_IO_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "upit/dsp/stft.h"
#include "upit/io/catalog.h"
#include "upit/io/noise_manifest.h"
#include "upit/mixing/mixture.h"
#include "upit/model/trainer.h"

namespace upit {

inline constexpr const char *kManifestFileName = "manifest.jsonl";
inline constexpr const char *kChecksumIndexFileName = "checksums.tsv";

struct DatasetSpec {
  std::string name;
  Composition composition = Composition::kTwoPlusThree;
  int num_train = 200;
  int num_validation = 40;
  int num_test = 40;
  double max_level_offset_db = 5.0;
  // Training and validation SNRs are uniform on [min, max]; test mixtures
  // cycle through test_snrs_db. Unused without noise.
  double snr_min_db = -5.0;
  double snr_max_db = 10.0;
  std::vector<double> test_snrs_db = {-5.0, 0.0, 5.0, 20.0};
  uint64_t seed = 1;
  StftConfig stft;
};

struct DatasetManifest {
  DatasetSpec spec;
  std::string corpus_id;
  std::filesystem::path catalog_path;
  std::map<std::string, std::filesystem::path> noise_paths;  // id -> record
  std::vector<MixtureRecipe> recipes;
  // Effective configuration of the command that produced the dataset.
  std::string config_echo;

  std::vector<const MixtureRecipe *> InSplit(const std::string &split) const;
};

// Samples recipes: speakers drawn uniformly without replacement from the
// split's speakers, offsets uniform on [0, max], half of the combined set with
// three speakers, noise types balanced, and non-overlapping noise segments
// inside the split's partition. Throws kInvalidArgument when the corpus or
// a noise partition is too small.
DatasetManifest BuildManifest(const CorpusCatalog &catalog,
                              const std::map<std::string, NoiseSource> &noises,
                              const DatasetSpec &spec);

// Asserts that every recipe resolves, uses its own split's speakers and noise
// partition, and that noise segments never overlap within a split.
void ValidateManifest(const DatasetManifest &manifest, const CorpusCatalog &catalog,
                      const std::map<std::string, NoiseSource> &noises);

// JSON lines: header record then one recipe per line. Paths are stored
// relative to the manifest's directory when possible.
void WriteManifest(const DatasetManifest &m, const std::filesystem::path &path);
DatasetManifest ReadManifest(const std::filesystem::path &path);
std::string ManifestText(const DatasetManifest &m, const std::filesystem::path &base);

MixtureExample SynthesizeExample(const MixtureRecipe &recipe,
                                 const CorpusCatalog &catalog,
                                 const std::map<std::string, NoiseSource> &noises);

struct MaterializeOptions {
  int workers = 1;
};

// Writes <dir>/manifest.jsonl, per-mixture WAVs under <dir>/<split>/<id>/
// (mix, s1..sS, noise) and <dir>/checksums.tsv. Components share one storage
// scale and the mixture is the integer sum of the stored components, so
// additivity survives quantisation. Re-materialising into a directory whose
// index disagrees throws kConflict. Returns the checksum index.
std::map<std::string, std::string> Materialize(
    const DatasetManifest &manifest, const CorpusCatalog &catalog,
    const std::map<std::string, NoiseSource> &noises,
    const std::filesystem::path &dir, const MaterializeOptions &options = {});

std::map<std::string, std::string> ReadChecksumIndex(const std::filesystem::path &path);

// Loads a stored example and re-checks additivity (kCorruptData on failure).
MixtureExample LoadExample(const std::filesystem::path &dataset_dir,
                           const MixtureRecipe &recipe);

// Mixture magnitude and phase-sensitive targets for every output channel.
TrainingUtterance MakeTrainingUtterance(const MixtureExample &ex,
                                        const StftConfig &stft);

std::vector<TrainingUtterance> LoadTrainingSet(const std::filesystem::path &dataset_dir,
                                               const DatasetManifest &manifest,
                                               const std::string &split, int workers = 1);

std::map<std::string, NoiseSource> LoadNoises(const DatasetManifest &manifest);

}  // namespace upit

#endif  // UPIT_IO_DATASET_H_
