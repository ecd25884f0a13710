// src/io/noise_manifest.cc

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

#include "upit/io/noise_manifest.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "upit/error.h"
#include "upit/io/checksum.h"
#include "upit/io/wav.h"

namespace upit {

namespace {

constexpr const char *kFormat = "upit-noise";
constexpr int kVersion = 1;

}  // namespace

Waveform NoiseSource::Slice(const std::string &split) const {
  const auto &b = record.boundaries;
  std::size_t lo = 0, hi = 0;
  if (split == "train") {
    hi = b[0];
  } else if (split == "validation") {
    lo = b[0];
    hi = b[1];
  } else if (split == "test") {
    lo = b[1];
    hi = b[2];
  } else {
    Fail(ErrorKind::kInvalidArgument, "unknown split '" + split + "'");
  }
  Require(hi <= waveform.size(), ErrorKind::kCorruptData,
          "noise " + record.noise_id + ": partition exceeds the signal");
  return Waveform(std::vector<double>(waveform.samples.begin() + lo,
                                      waveform.samples.begin() + hi),
                  waveform.sample_rate);
}

std::filesystem::path SaveNoise(NoiseRecord record, const Waveform &w,
                                const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  record.sample_rate = w.sample_rate;
  record.num_samples = static_cast<int64_t>(w.size());
  record.boundaries = PartitionBoundaries(w.size(), kNoiseSplitRatios);
  record.wav_path = record.noise_id + ".wav";
  const std::filesystem::path wav = dir / record.wav_path;
  double peak = 0.0;
  for (double v : w.samples) peak = std::max(peak, std::abs(v));
  Require(peak > 0.0, ErrorKind::kInvalidArgument,
          "noise " + record.noise_id + " is all zeros");
  record.storage_gain = kNoiseStoragePeak / peak;
  Waveform scaled = w;
  for (double &v : scaled.samples) v *= record.storage_gain;
  WriteWav(scaled, wav);
  record.checksum = ChecksumHex(FileChecksum(wav));

  const nlohmann::json j{{"format", kFormat},
                         {"version", kVersion},
                         {"noise_id", record.noise_id},
                         {"type", record.type},
                         {"corpus_id", record.corpus_id},
                         {"seed", record.seed},
                         {"sample_rate", record.sample_rate},
                         {"num_samples", record.num_samples},
                         {"partition_ratios", kNoiseSplitRatios},
                         {"boundaries", record.boundaries},
                         {"n_sentences", record.n_sentences},
                         {"n_groups", record.n_groups},
                         {"storage_gain", record.storage_gain},
                         {"wav", record.wav_path},
                         {"checksum_algorithm", kChecksumAlgorithm},
                         {"checksum", record.checksum}};
  const std::filesystem::path out_path = dir / (record.noise_id + ".json");
  std::ofstream out(out_path, std::ios::trunc);
  Require(static_cast<bool>(out), ErrorKind::kMissingInput,
          "cannot write " + out_path.string());
  out << j.dump(2) << "\n";
  return out_path;
}

NoiseRecord ReadNoiseRecord(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kMissingInput, "cannot open noise record " + path.string());
  NoiseRecord r;
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    Require(j.value("format", "") == kFormat && j.value("version", 0) == kVersion,
            ErrorKind::kUnsupportedFormat,
            "noise record: unsupported header in " + path.string());
    r.noise_id = j.at("noise_id").get<std::string>();
    r.type = j.at("type").get<std::string>();
    r.corpus_id = j.at("corpus_id").get<std::string>();
    r.seed = j.at("seed").get<uint64_t>();
    r.sample_rate = j.at("sample_rate").get<int>();
    r.num_samples = j.at("num_samples").get<int64_t>();
    r.boundaries = j.at("boundaries").get<std::array<std::size_t, 3>>();
    r.n_sentences = j.value("n_sentences", 0);
    r.n_groups = j.value("n_groups", 0);
    r.storage_gain = j.value("storage_gain", 1.0);
    r.wav_path = j.at("wav").get<std::string>();
    r.checksum = j.at("checksum").get<std::string>();
  } catch (const nlohmann::json::exception &ex) {
    Fail(ErrorKind::kCorruptData, "noise record " + path.string() + ": " + ex.what());
  }
  return r;
}

NoiseSource LoadNoise(const std::filesystem::path &record_path) {
  NoiseSource n;
  n.record = ReadNoiseRecord(record_path);
  n.record_path = record_path;
  const std::filesystem::path wav = record_path.parent_path() / n.record.wav_path;
  Require(ChecksumHex(FileChecksum(wav)) == n.record.checksum,
          ErrorKind::kCorruptData, "noise " + n.record.noise_id + ": checksum mismatch");
  n.waveform = ReadWav(wav);
  Require(static_cast<int64_t>(n.waveform.size()) == n.record.num_samples,
          ErrorKind::kCorruptData, "noise " + n.record.noise_id + ": length mismatch");
  return n;
}

}  // namespace upit
