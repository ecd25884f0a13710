// include/upit/io/catalog.h

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

#ifndef UPIT_IO_CATALOG_H_
#define UPIT_IO_CATALOG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "upit/dsp/waveform.h"

namespace upit {

inline constexpr const char *kSplitNames[] = {"train", "validation", "test"};
inline constexpr const char *kCatalogFileName = "catalog.jsonl";

struct CatalogEntry {
  std::string utterance_id;
  std::string speaker_id;
  std::string path;  // relative to the catalog root
  std::string split;
  int64_t num_samples = 0;
  int sample_rate = 8000;

  double duration() const { return static_cast<double>(num_samples) / sample_rate; }
};

struct CorpusCatalog {
  std::string corpus_id;
  std::filesystem::path root;
  std::vector<CatalogEntry> entries;

  const CatalogEntry *Find(const std::string &utterance_id) const;
  std::vector<const CatalogEntry *> InSplit(const std::string &split) const;
  Waveform Load(const CatalogEntry &e) const;
  std::vector<Waveform> LoadAll() const;

  // Unique ids, known split tags, and test speakers disjoint from
  // train/validation speakers (kConflict otherwise). With check_files every
  // entry must decode with the recorded length and rate.
  void Validate(bool check_files) const;
};

// JSON lines: a header record, then one record per entry. The root is the
// directory holding the file.
CorpusCatalog ReadCatalog(const std::filesystem::path &path);
void WriteCatalog(const CorpusCatalog &catalog, const std::filesystem::path &path);

}  // namespace upit

#endif  // UPIT_IO_CATALOG_H_
