// src/io/dataset.cc

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

#include "upit/io/dataset.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "upit/error.h"
#include "upit/io/checksum.h"
#include "upit/io/wav.h"
#include "upit/pit/masks.h"
#include "upit/util/parallel.h"
#include "upit/util/random.h"

namespace upit {

namespace {

constexpr const char *kFormat = "upit-dataset";
constexpr int kVersion = 1;
constexpr double kStoragePeak = 0.95;

using nlohmann::json;

struct SplitPlan {
  const char *name;
  const char *prefix;
  int count;
};

std::vector<SplitPlan> Splits(const DatasetSpec &spec) {
  return {{"train", "tr", spec.num_train},
          {"validation", "cv", spec.num_validation},
          {"test", "tt", spec.num_test}};
}

int SplitIndex(const std::string &split) {
  for (int i = 0; i < 3; ++i)
    if (split == kSplitNames[i]) return i;
  Fail(ErrorKind::kInvalidArgument, "unknown split '" + split + "'");
}

double ThreeSpeakerFraction(Composition c) {
  switch (c) {
    case Composition::kTwoSpeaker: return 0.0;
    case Composition::kThreeSpeaker: return 1.0;
    case Composition::kTwoPlusThree: return 0.5;
  }
  return 0.0;
}

std::size_t PartitionLength(const NoiseSource &n, const std::string &split) {
  const auto &b = n.record.boundaries;
  switch (SplitIndex(split)) {
    case 0: return b[0];
    case 1: return b[1] - b[0];
    default: return b[2] - b[1];
  }
}

int64_t RecipeLength(const MixtureRecipe &r, const CorpusCatalog &catalog) {
  int64_t len = 0;
  for (const std::string &id : r.source_ids) {
    const CatalogEntry *e = catalog.Find(id);
    Require(e != nullptr, ErrorKind::kMissingInput,
            "recipe " + r.id + ": utterance " + id + " not in catalog");
    len = std::max(len, e->num_samples);
  }
  return len;
}

std::string PathString(const std::filesystem::path &p,
                       const std::filesystem::path &base) {
  if (base.empty()) return p.string();
  const auto rel =
      std::filesystem::absolute(p).lexically_normal().lexically_relative(
          std::filesystem::absolute(base).lexically_normal());
  return rel.empty() ? p.string() : rel.generic_string();
}

std::filesystem::path ResolvePath(const std::string &s,
                                  const std::filesystem::path &base) {
  const std::filesystem::path p(s);
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

json RecipeToJson(const MixtureRecipe &r) {
  json j{{"id", r.id},
         {"split", r.split},
         {"source_ids", r.source_ids},
         {"level_offsets_db", r.level_offsets_db},
         {"silent_speaker_present", r.silent_speaker_present},
         {"noise_id", r.noise_id ? json(*r.noise_id) : json(nullptr)},
         {"noise_offset", r.noise_offset},
         {"snr_db", r.snr_db ? json(*r.snr_db) : json(nullptr)},
         {"seed", r.seed}};
  if (!r.source_gains.empty()) j["source_gains"] = r.source_gains;
  return j;
}

MixtureRecipe RecipeFromJson(const json &j) {
  MixtureRecipe r;
  r.id = j.at("id").get<std::string>();
  r.split = j.at("split").get<std::string>();
  r.source_ids = j.at("source_ids").get<std::vector<std::string>>();
  r.level_offsets_db = j.at("level_offsets_db").get<std::vector<double>>();
  r.silent_speaker_present = j.at("silent_speaker_present").get<bool>();
  if (!j.at("noise_id").is_null()) r.noise_id = j.at("noise_id").get<std::string>();
  r.noise_offset = j.at("noise_offset").get<int64_t>();
  if (!j.at("snr_db").is_null()) r.snr_db = j.at("snr_db").get<double>();
  r.seed = j.at("seed").get<uint64_t>();
  if (j.contains("source_gains"))
    r.source_gains = j.at("source_gains").get<std::vector<double>>();
  r.Validate();
  return r;
}

std::filesystem::path ExampleDir(const MixtureRecipe &r) {
  return std::filesystem::path(r.split) / r.id;
}

std::string SourceFileName(int s) { return "s" + std::to_string(s + 1) + ".wav"; }

void WriteFile(const std::filesystem::path &path, const std::string &bytes) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  Require(static_cast<bool>(f), ErrorKind::kMissingInput,
          "cannot write " + path.string());
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  Require(static_cast<bool>(f), ErrorKind::kMissingInput,
          "write failed for " + path.string());
}

std::string BytesChecksum(const std::string &bytes) {
  return ChecksumHex(Fnv1a64(std::span(
      reinterpret_cast<const unsigned char *>(bytes.data()), bytes.size())));
}

}  // namespace

std::vector<const MixtureRecipe *> DatasetManifest::InSplit(
    const std::string &split) const {
  std::vector<const MixtureRecipe *> out;
  for (const MixtureRecipe &r : recipes)
    if (r.split == split) out.push_back(&r);
  return out;
}

DatasetManifest BuildManifest(const CorpusCatalog &catalog,
                              const std::map<std::string, NoiseSource> &noises,
                              const DatasetSpec &spec) {
  catalog.Validate(false);
  spec.stft.Validate();
  Require(spec.num_train >= 0 && spec.num_validation >= 0 && spec.num_test >= 0,
          ErrorKind::kInvalidArgument, "dataset counts must be nonnegative");
  Require(spec.max_level_offset_db >= 0.0, ErrorKind::kInvalidArgument,
          "max level offset must be nonnegative");
  Require(spec.snr_min_db <= spec.snr_max_db && spec.snr_min_db >= kMinSnrDb &&
              spec.snr_max_db <= kMaxSnrDb,
          ErrorKind::kInvalidArgument, "SNR range outside [-30, 60] dB");
  Require(noises.empty() || !spec.test_snrs_db.empty(), ErrorKind::kInvalidArgument,
          "test SNR list is empty");

  DatasetManifest m;
  m.spec = spec;
  m.corpus_id = catalog.corpus_id;
  m.catalog_path = catalog.root / kCatalogFileName;
  std::vector<std::string> noise_ids;
  for (const auto &[id, n] : noises) {
    noise_ids.push_back(id);
    m.noise_paths[id] = n.record_path;
  }
  const int num_noises = static_cast<int>(noise_ids.size());
  const double three_fraction = ThreeSpeakerFraction(spec.composition);
  const int cycle = spec.composition == Composition::kTwoPlusThree ? 2 : 1;

  std::mt19937_64 eng = MakeEngine(spec.seed, {0xda7a});
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const SplitPlan &plan : Splits(spec)) {
    std::map<std::string, std::vector<const CatalogEntry *>> by_speaker;
    for (const CatalogEntry *e : catalog.InSplit(plan.name))
      by_speaker[e->speaker_id].push_back(e);
    std::vector<std::string> speakers;
    for (const auto &[spk, utts] : by_speaker) speakers.push_back(spk);
    const int needed = three_fraction > 0.0 ? 3 : 2;
    Require(plan.count == 0 || static_cast<int>(speakers.size()) >= needed,
            ErrorKind::kInvalidArgument,
            std::string("insufficient corpus: split ") + plan.name + " has " +
                std::to_string(speakers.size()) + " speakers, need " +
                std::to_string(needed));

    const std::size_t first = m.recipes.size();
    for (int i = 0; i < plan.count; ++i) {
      MixtureRecipe r;
      char id[32];
      std::snprintf(id, sizeof(id), "%s%05d", plan.prefix, i);
      r.id = id;
      r.split = plan.name;
      int num_speakers = 2;
      if (spec.composition == Composition::kThreeSpeaker ||
          (spec.composition == Composition::kTwoPlusThree && i % 2 == 0))
        num_speakers = 3;
      r.silent_speaker_present =
          spec.composition == Composition::kTwoPlusThree && num_speakers == 2;

      std::vector<std::string> pool = speakers;
      for (int s = 0; s < num_speakers; ++s) {
        std::uniform_int_distribution<std::size_t> pick(s, pool.size() - 1);
        std::swap(pool[s], pool[pick(eng)]);
        const auto &utts = by_speaker[pool[s]];
        std::uniform_int_distribution<std::size_t> utt(0, utts.size() - 1);
        r.source_ids.push_back(utts[utt(eng)]->utterance_id);
      }
      for (int s = 1; s < num_speakers; ++s)
        r.level_offsets_db.push_back(spec.max_level_offset_db * unit(eng));
      if (num_noises > 0) {
        const int slot = i / cycle;
        r.noise_id = noise_ids[slot % num_noises];
        if (std::string(plan.name) == "test") {
          const int k = static_cast<int>(spec.test_snrs_db.size());
          r.snr_db = spec.test_snrs_db[(slot / num_noises) % k];
        } else {
          r.snr_db = spec.snr_min_db + (spec.snr_max_db - spec.snr_min_db) * unit(eng);
        }
      }
      r.seed = DeriveSeed(spec.seed, {static_cast<uint64_t>(SplitIndex(plan.name)),
                                      static_cast<uint64_t>(i)});
      m.recipes.push_back(std::move(r));
    }

    // Lay the noise segments of this split end to end, separated by random
    // gaps that together use up the partition's slack.
    for (const std::string &nid : noise_ids) {
      std::vector<MixtureRecipe *> users;
      int64_t total = 0;
      for (std::size_t k = first; k < m.recipes.size(); ++k) {
        if (m.recipes[k].noise_id == nid) {
          users.push_back(&m.recipes[k]);
          total += RecipeLength(m.recipes[k], catalog);
        }
      }
      if (users.empty()) continue;
      const int64_t available =
          static_cast<int64_t>(PartitionLength(noises.at(nid), plan.name));
      Require(total <= available, ErrorKind::kInvalidArgument,
              "insufficient noise: " + nid + " " + plan.name + " partition has " +
                  std::to_string(available) + " samples, recipes need " +
                  std::to_string(total));
      std::uniform_int_distribution<int64_t> gap(0, available - total);
      std::vector<int64_t> starts(users.size());
      for (int64_t &s : starts) s = gap(eng);
      std::sort(starts.begin(), starts.end());
      int64_t used = 0;
      for (std::size_t k = 0; k < users.size(); ++k) {
        users[k]->noise_offset = starts[k] + used;
        used += RecipeLength(*users[k], catalog);
      }
    }
  }
  ValidateManifest(m, catalog, noises);
  return m;
}

void ValidateManifest(const DatasetManifest &manifest, const CorpusCatalog &catalog,
                      const std::map<std::string, NoiseSource> &noises) {
  std::map<std::pair<std::string, std::string>, std::vector<std::pair<int64_t, int64_t>>>
      segments;
  std::set<std::string> ids;
  for (const MixtureRecipe &r : manifest.recipes) {
    r.Validate();
    Require(ids.insert(r.id).second, ErrorKind::kConflict,
            "manifest: duplicate recipe id " + r.id);
    std::set<std::string> speakers;
    for (const std::string &uid : r.source_ids) {
      const CatalogEntry *e = catalog.Find(uid);
      Require(e != nullptr, ErrorKind::kMissingInput,
              "recipe " + r.id + ": utterance " + uid + " not in catalog");
      Require(e->split == r.split, ErrorKind::kConflict,
              "recipe " + r.id + ": utterance " + uid + " belongs to split " + e->split);
      Require(speakers.insert(e->speaker_id).second, ErrorKind::kConflict,
              "recipe " + r.id + ": speaker " + e->speaker_id + " used twice");
    }
    if (!r.noise_id) continue;
    auto it = noises.find(*r.noise_id);
    Require(it != noises.end(), ErrorKind::kMissingInput,
            "recipe " + r.id + ": noise " + *r.noise_id + " not loaded");
    const int64_t len = RecipeLength(r, catalog);
    Require(r.noise_offset >= 0 &&
                r.noise_offset + len <=
                    static_cast<int64_t>(PartitionLength(it->second, r.split)),
            ErrorKind::kConflict,
            "recipe " + r.id + ": noise segment leaves the " + r.split + " partition");
    segments[{*r.noise_id, r.split}].push_back({r.noise_offset, r.noise_offset + len});
  }
  for (auto &[key, segs] : segments) {
    std::sort(segs.begin(), segs.end());
    for (std::size_t k = 1; k < segs.size(); ++k)
      Require(segs[k].first >= segs[k - 1].second, ErrorKind::kConflict,
              "manifest: overlapping noise segments in " + key.first + "/" + key.second);
  }
}

std::string ManifestText(const DatasetManifest &m, const std::filesystem::path &base) {
  const DatasetSpec &s = m.spec;
  json noises = json::object();
  for (const auto &[id, p] : m.noise_paths) noises[id] = PathString(p, base);
  json header{{"format", kFormat},
              {"version", kVersion},
              {"name", s.name},
              {"composition", CompositionName(s.composition)},
              {"three_speaker_fraction", ThreeSpeakerFraction(s.composition)},
              {"counts",
               {{"train", s.num_train}, {"validation", s.num_validation}, {"test", s.num_test}}},
              {"max_level_offset_db", s.max_level_offset_db},
              {"snr_range_db", {s.snr_min_db, s.snr_max_db}},
              {"test_snrs_db", s.test_snrs_db},
              {"seed", s.seed},
              {"stft",
               {{"fft_size", s.stft.fft_size},
                {"window_length", s.stft.window_length},
                {"hop", s.stft.hop},
                {"window", "hanning"}}},
              {"corpus_id", m.corpus_id},
              {"catalog", PathString(m.catalog_path, base)},
              {"noises", noises},
              {"checksum_algorithm", kChecksumAlgorithm}};
  if (!m.config_echo.empty()) {
    const json cfg = json::parse(m.config_echo, nullptr, false);
    header["config"] = cfg.is_discarded() ? json(m.config_echo) : cfg;
  }
  std::string out = header.dump() + "\n";
  for (const MixtureRecipe &r : m.recipes) out += RecipeToJson(r).dump() + "\n";
  return out;
}

void WriteManifest(const DatasetManifest &m, const std::filesystem::path &path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  WriteFile(path, ManifestText(m, path.parent_path()));
}

DatasetManifest ReadManifest(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kMissingInput, "cannot open manifest " + path.string());
  const std::filesystem::path base = path.parent_path();
  DatasetManifest m;
  std::string line;
  bool header = true;
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json j = json::parse(line);
      if (!header) {
        m.recipes.push_back(RecipeFromJson(j));
        continue;
      }
      Require(j.value("format", "") == kFormat && j.value("version", 0) == kVersion,
              ErrorKind::kUnsupportedFormat,
              "manifest: unsupported header in " + path.string());
      DatasetSpec &s = m.spec;
      s.name = j.at("name").get<std::string>();
      s.composition = ParseComposition(j.at("composition").get<std::string>());
      s.num_train = j.at("counts").at("train").get<int>();
      s.num_validation = j.at("counts").at("validation").get<int>();
      s.num_test = j.at("counts").at("test").get<int>();
      s.max_level_offset_db = j.at("max_level_offset_db").get<double>();
      s.snr_min_db = j.at("snr_range_db").at(0).get<double>();
      s.snr_max_db = j.at("snr_range_db").at(1).get<double>();
      s.test_snrs_db = j.at("test_snrs_db").get<std::vector<double>>();
      s.seed = j.at("seed").get<uint64_t>();
      s.stft.fft_size = j.at("stft").at("fft_size").get<int>();
      s.stft.window_length = j.at("stft").at("window_length").get<int>();
      s.stft.hop = j.at("stft").at("hop").get<int>();
      Require(j.at("stft").at("window").get<std::string>() == "hanning",
              ErrorKind::kUnsupportedFormat, "manifest: unknown window type");
      s.stft.Validate();
      m.corpus_id = j.at("corpus_id").get<std::string>();
      m.catalog_path = ResolvePath(j.at("catalog").get<std::string>(), base);
      for (const auto &[id, p] : j.at("noises").items())
        m.noise_paths[id] = ResolvePath(p.get<std::string>(), base);
      if (j.contains("config"))
        m.config_echo = j["config"].is_string() ? j["config"].get<std::string>()
                                                : j["config"].dump();
      header = false;
    }
  } catch (const json::exception &ex) {
    Fail(ErrorKind::kCorruptData, "manifest " + path.string() + ": " + ex.what());
  }
  Require(!header, ErrorKind::kCorruptData, "manifest: empty file " + path.string());
  return m;
}

std::map<std::string, NoiseSource> LoadNoises(const DatasetManifest &manifest) {
  std::map<std::string, NoiseSource> out;
  for (const auto &[id, path] : manifest.noise_paths) {
    NoiseSource n = LoadNoise(path);
    Require(n.record.noise_id == id, ErrorKind::kCorruptData,
            "noise record " + path.string() + " has id " + n.record.noise_id);
    out.emplace(id, std::move(n));
  }
  return out;
}

MixtureExample SynthesizeExample(const MixtureRecipe &recipe,
                                 const CorpusCatalog &catalog,
                                 const std::map<std::string, NoiseSource> &noises) {
  recipe.Validate();
  std::vector<Waveform> utts;
  for (const std::string &id : recipe.source_ids) {
    const CatalogEntry *e = catalog.Find(id);
    Require(e != nullptr, ErrorKind::kMissingInput,
            "recipe " + recipe.id + ": utterance " + id + " not in catalog");
    utts.push_back(catalog.Load(*e));
  }
  MixtureExample ex = MixSpeakers(utts, recipe.level_offsets_db);
  if (recipe.silent_speaker_present)
    ex = AddSilentSpeaker(std::move(ex), DeriveSeed(recipe.seed, {0x51}));
  if (recipe.noise_id) {
    auto it = noises.find(*recipe.noise_id);
    Require(it != noises.end(), ErrorKind::kMissingInput,
            "recipe " + recipe.id + ": noise " + *recipe.noise_id + " not loaded");
    ex = AddNoiseAtSnr(std::move(ex), it->second.Slice(recipe.split),
                       static_cast<std::size_t>(recipe.noise_offset), *recipe.snr_db);
  }
  std::vector<double> gains = std::move(ex.recipe.source_gains);
  ex.recipe = recipe;
  ex.recipe.source_gains = std::move(gains);
  return ex;
}

std::map<std::string, std::string> ReadChecksumIndex(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kMissingInput, "cannot open checksum index " + path.string());
  std::map<std::string, std::string> index;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    Require(tab != std::string::npos, ErrorKind::kCorruptData,
            "checksum index: malformed line in " + path.string());
    index[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return index;
}

std::map<std::string, std::string> Materialize(
    const DatasetManifest &manifest, const CorpusCatalog &catalog,
    const std::map<std::string, NoiseSource> &noises, const std::filesystem::path &dir,
    const MaterializeOptions &options) {
  ValidateManifest(manifest, catalog, noises);
  std::filesystem::create_directories(dir);
  const std::filesystem::path index_path = dir / kChecksumIndexFileName;
  std::map<std::string, std::string> previous;
  if (std::filesystem::exists(index_path)) previous = ReadChecksumIndex(index_path);

  std::map<std::string, std::string> index;
  std::mutex mu;
  // Checks a file against the previous index, then writes it.
  auto emit = [&](const std::string &rel, const std::string &bytes) {
    const std::string sum = BytesChecksum(bytes);
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = previous.find(rel);
      Require(it == previous.end() || it->second == sum, ErrorKind::kConflict,
              "materialize: " + rel + " differs from the existing checksum index");
      index[rel] = sum;
    }
    WriteFile(dir / rel, bytes);
  };

  emit(kManifestFileName, ManifestText(manifest, dir));
  ParallelFor(manifest.recipes.size(), options.workers, [&](std::size_t k) {
    const MixtureRecipe &recipe = manifest.recipes[k];
    const MixtureExample ex = SynthesizeExample(recipe, catalog, noises);
    double peak = 0.0;
    for (double v : ex.mixture.samples) peak = std::max(peak, std::abs(v));
    const double scale = peak > kStoragePeak ? kStoragePeak / peak : 1.0;

    std::vector<std::vector<int16_t>> parts;
    auto quantize = [&](const Waveform &w) {
      std::vector<double> scaled(w.samples);
      for (double &v : scaled) v *= scale;
      parts.push_back(QuantizePcm16(scaled));
    };
    for (const Waveform &s : ex.sources) quantize(s);
    if (ex.noise) quantize(*ex.noise);
    std::vector<int16_t> mix(ex.mixture.size());
    for (std::size_t i = 0; i < mix.size(); ++i) {
      int32_t sum = 0;
      for (const auto &p : parts) sum += p[i];
      Require(sum >= -32768 && sum <= 32767, ErrorKind::kNumeric,
              "materialize: " + recipe.id + " overflows 16-bit storage");
      mix[i] = static_cast<int16_t>(sum);
    }

    const std::filesystem::path base = ExampleDir(recipe);
    const int rate = ex.mixture.sample_rate;
    emit((base / "mix.wav").generic_string(), EncodeWav(mix, rate));
    for (std::size_t s = 0; s < ex.sources.size(); ++s)
      emit((base / SourceFileName(static_cast<int>(s))).generic_string(),
           EncodeWav(parts[s], rate));
    if (ex.noise) emit((base / "noise.wav").generic_string(), EncodeWav(parts.back(), rate));
    const json info{{"id", recipe.id},
                    {"storage_scale", scale},
                    {"source_gains", ex.recipe.source_gains},
                    {"num_samples", ex.mixture.size()},
                    {"sample_rate", rate}};
    emit((base / "example.json").generic_string(), info.dump() + "\n");
  });

  std::ostringstream os;
  os << "# " << kChecksumAlgorithm << "\n";
  for (const auto &[rel, sum] : index) os << rel << '\t' << sum << '\n';
  WriteFile(index_path, os.str());
  return index;
}

MixtureExample LoadExample(const std::filesystem::path &dataset_dir,
                           const MixtureRecipe &recipe) {
  const std::filesystem::path base = dataset_dir / ExampleDir(recipe);
  int rate = 0;
  const std::vector<int16_t> mix = ReadWavPcm16(base / "mix.wav", &rate);
  std::vector<std::vector<int16_t>> parts;
  for (int s = 0; s < recipe.num_outputs(); ++s) {
    int r = 0;
    parts.push_back(ReadWavPcm16(base / SourceFileName(s), &r));
    Require(r == rate && parts.back().size() == mix.size(), ErrorKind::kCorruptData,
            "example " + recipe.id + ": source files disagree with the mixture");
  }
  if (recipe.noise_id) {
    int r = 0;
    parts.push_back(ReadWavPcm16(base / "noise.wav", &r));
    Require(r == rate && parts.back().size() == mix.size(), ErrorKind::kCorruptData,
            "example " + recipe.id + ": noise file disagrees with the mixture");
  }
  for (std::size_t i = 0; i < mix.size(); ++i) {
    int32_t sum = 0;
    for (const auto &p : parts) sum += p[i];
    Require(sum == mix[i], ErrorKind::kCorruptData,
            "example " + recipe.id + ": mixture is not the sum of its components");
  }

  MixtureExample ex;
  ex.recipe = recipe;
  ex.mixture = FromPcm16(mix, rate);
  for (int s = 0; s < recipe.num_outputs(); ++s) ex.sources.push_back(FromPcm16(parts[s], rate));
  if (recipe.noise_id) ex.noise = FromPcm16(parts.back(), rate);
  return ex;
}

TrainingUtterance MakeTrainingUtterance(const MixtureExample &ex, const StftConfig &stft) {
  const ComplexSpectrogram mix = Stft(ex.mixture, stft);
  const PhaseSpectrogram mix_phase = mix.Phase();
  TrainingUtterance u;
  u.id = ex.recipe.id;
  u.mixture_magnitude = mix.Magnitude().frames;
  for (const Waveform &s : ex.sources) {
    const ComplexSpectrogram spec = Stft(s, stft);
    u.targets.push_back(PhaseSensitiveTarget(
        spec.Magnitude(), ComputePhaseDifference(mix_phase, spec.Phase())));
  }
  return u;
}

std::vector<TrainingUtterance> LoadTrainingSet(const std::filesystem::path &dataset_dir,
                                               const DatasetManifest &manifest,
                                               const std::string &split, int workers) {
  const std::vector<const MixtureRecipe *> recipes = manifest.InSplit(split);
  std::vector<TrainingUtterance> out(recipes.size());
  ParallelFor(recipes.size(), workers, [&](std::size_t k) {
    out[k] = MakeTrainingUtterance(LoadExample(dataset_dir, *recipes[k]),
                                   manifest.spec.stft);
  });
  return out;
}

}  // namespace upit
