// src/io/catalog.cc

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

#include "upit/io/catalog.h"

#include <algorithm>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "upit/error.h"
#include "upit/io/wav.h"

namespace upit {

namespace {

constexpr const char *kFormat = "upit-catalog";
constexpr int kVersion = 1;

bool KnownSplit(const std::string &s) {
  return std::find(std::begin(kSplitNames), std::end(kSplitNames), s) !=
         std::end(kSplitNames);
}

}  // namespace

const CatalogEntry *CorpusCatalog::Find(const std::string &utterance_id) const {
  for (const CatalogEntry &e : entries)
    if (e.utterance_id == utterance_id) return &e;
  return nullptr;
}

std::vector<const CatalogEntry *> CorpusCatalog::InSplit(const std::string &split) const {
  std::vector<const CatalogEntry *> out;
  for (const CatalogEntry &e : entries)
    if (e.split == split) out.push_back(&e);
  return out;
}

Waveform CorpusCatalog::Load(const CatalogEntry &e) const {
  return ReadWav(root / e.path);
}

std::vector<Waveform> CorpusCatalog::LoadAll() const {
  std::vector<Waveform> out;
  out.reserve(entries.size());
  for (const CatalogEntry &e : entries) out.push_back(Load(e));
  return out;
}

void CorpusCatalog::Validate(bool check_files) const {
  std::set<std::string> ids, test_speakers, other_speakers;
  for (const CatalogEntry &e : entries) {
    Require(ids.insert(e.utterance_id).second, ErrorKind::kConflict,
            "catalog: duplicate utterance id " + e.utterance_id);
    Require(KnownSplit(e.split), ErrorKind::kInvalidArgument,
            "catalog: unknown split '" + e.split + "' for " + e.utterance_id);
    (e.split == "test" ? test_speakers : other_speakers).insert(e.speaker_id);
  }
  for (const std::string &s : test_speakers)
    Require(!other_speakers.count(s), ErrorKind::kConflict,
            "catalog: test speaker " + s + " also appears in train/validation");
  if (!check_files) return;
  for (const CatalogEntry &e : entries) {
    const Waveform w = Load(e);
    Require(static_cast<int64_t>(w.size()) == e.num_samples &&
                w.sample_rate == e.sample_rate,
            ErrorKind::kCorruptData,
            "catalog: " + e.path + " does not match its recorded length/rate");
  }
}

CorpusCatalog ReadCatalog(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kMissingInput, "cannot open catalog " + path.string());
  CorpusCatalog c;
  c.root = path.parent_path();
  std::string line;
  bool header = true;
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const nlohmann::json j = nlohmann::json::parse(line);
      if (header) {
        Require(j.value("format", "") == kFormat && j.value("version", 0) == kVersion,
                ErrorKind::kUnsupportedFormat,
                "catalog: unsupported header in " + path.string());
        c.corpus_id = j.at("corpus_id").get<std::string>();
        header = false;
        continue;
      }
      CatalogEntry e;
      e.utterance_id = j.at("utterance_id").get<std::string>();
      e.speaker_id = j.at("speaker_id").get<std::string>();
      e.path = j.at("path").get<std::string>();
      e.split = j.at("split").get<std::string>();
      e.num_samples = j.at("num_samples").get<int64_t>();
      e.sample_rate = j.at("sample_rate").get<int>();
      c.entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception &ex) {
    Fail(ErrorKind::kCorruptData, "catalog " + path.string() + ": " + ex.what());
  }
  Require(!header, ErrorKind::kCorruptData, "catalog: empty file " + path.string());
  return c;
}

void WriteCatalog(const CorpusCatalog &catalog, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::trunc);
  Require(static_cast<bool>(out), ErrorKind::kMissingInput,
          "cannot write " + path.string());
  out << nlohmann::json{{"format", kFormat},
                        {"version", kVersion},
                        {"corpus_id", catalog.corpus_id}}
             .dump()
      << "\n";
  for (const CatalogEntry &e : catalog.entries) {
    out << nlohmann::json{{"utterance_id", e.utterance_id},
                          {"speaker_id", e.speaker_id},
                          {"path", e.path},
                          {"split", e.split},
                          {"num_samples", e.num_samples},
                          {"sample_rate", e.sample_rate},
                          {"duration", e.duration()}}
               .dump()
        << "\n";
  }
}

}  // namespace upit
