// tests/test_io.cc

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

#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <set>

#include "doctest.h"
#include "test_util.h"
#include "upit/error.h"
#include "upit/io/catalog.h"
#include "upit/io/checksum.h"
#include "upit/io/dataset.h"
#include "upit/io/noise_manifest.h"
#include "upit/io/synthetic_speech.h"
#include "upit/io/wav.h"
#include "upit/noise/noise_synth.h"
#include "upit/pipeline/experiment.h"

namespace upit {
namespace {

namespace fs = std::filesystem;

ErrorKind KindOf(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInvalidArgument;
}

std::string Slurp(const fs::path &p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void PutLe(std::string &s, uint32_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

// Hand-built RIFF image, independent of the library's encoder.
std::string RawWav(int channels, int bits, const std::vector<int16_t> &data,
                   bool extra_chunk = false) {
  std::string fmt;
  PutLe(fmt, 1, 2);
  PutLe(fmt, channels, 2);
  PutLe(fmt, 8000, 4);
  PutLe(fmt, 8000 * channels * bits / 8, 4);
  PutLe(fmt, channels * bits / 8, 2);
  PutLe(fmt, bits, 2);
  std::string body = "WAVEfmt ";
  PutLe(body, 16, 4);
  body += fmt;
  if (extra_chunk) {
    body += "LIST";
    PutLe(body, 3, 4);
    body += "abc";
    body.push_back('\0');
  }
  body += "data";
  PutLe(body, static_cast<uint32_t>(data.size() * 2), 4);
  for (int16_t v : data) PutLe(body, static_cast<uint16_t>(v), 2);
  std::string out = "RIFF";
  PutLe(out, static_cast<uint32_t>(body.size()), 4);
  return out + body;
}

struct Fixture {
  testing::TempDir dir{"io"};
  CorpusCatalog catalog;
  std::map<std::string, NoiseSource> noises;

  Fixture() {
    SyntheticCorpusSpec spec;
    spec.train_speakers = 8;
    spec.test_speakers = 4;
    spec.utterances_per_speaker = 5;
    spec.seed = 3;
    catalog = GenerateSyntheticCorpus(spec, dir.path() / "corpus");
    const auto utts = catalog.LoadAll();
    NoiseRecord ssn;
    ssn.noise_id = "ssn";
    ssn.type = "ssn";
    ssn.corpus_id = catalog.corpus_id;
    ssn.seed = 5;
    ssn.n_sentences = 10;
    const auto path = SaveNoise(ssn, GenerateSsn(utts, 10, 150.0, 5), dir.path() / "noise");
    noises.emplace("ssn", LoadNoise(path));
  }
};

DatasetSpec SmallSpec(int train, int validation, int test) {
  DatasetSpec s;
  s.name = "small";
  s.num_train = train;
  s.num_validation = validation;
  s.num_test = test;
  s.seed = 9;
  return s;
}

TEST_SUITE("io") {

TEST_CASE("FNV-1a 64 reference vectors") {
  const auto h = [](const std::string &s) {
    return Fnv1a64(std::span(reinterpret_cast<const unsigned char *>(s.data()), s.size()));
  };
  CHECK(ChecksumHex(h("")) == "cbf29ce484222325");
  CHECK(ChecksumHex(h("a")) == "af63dc4c8601ec8c");
  CHECK(ChecksumHex(h("foobar")) == "85944171f73967e8");
}

TEST_CASE("WAV round trip and scaling") {
  testing::TempDir dir("wav");
  const std::vector<int16_t> pcm{0, 1, -1, 32767, -32768, 1234, -20000};
  WriteWavPcm16(pcm, 8000, dir.path() / "a.wav");
  int rate = 0;
  CHECK(ReadWavPcm16(dir.path() / "a.wav", &rate) == pcm);
  CHECK(rate == 8000);
  CHECK(Slurp(dir.path() / "a.wav") == RawWav(1, 16, pcm));
  const Waveform w = ReadWav(dir.path() / "a.wav");
  CHECK(w.samples[4] == -1.0);
  CHECK(w.samples[3] == 32767.0 / 32768.0);

  const std::vector<double> x{0.5, -1.5, 1.5, 1.0 / 65536 * 1.01, -0.25};
  const auto q = QuantizePcm16(x);
  CHECK(q == std::vector<int16_t>{16384, -32768, 32767, 1, -8192});
  WriteWav(w, dir.path() / "b.wav");
  CHECK(ReadWavPcm16(dir.path() / "b.wav", &rate) == pcm);
}

TEST_CASE("WAV format errors") {
  testing::TempDir dir("wavbad");
  const std::vector<int16_t> pcm{1, 2, 3, 4};
  std::ofstream(dir.path() / "stereo.wav", std::ios::binary) << RawWav(2, 16, pcm);
  CHECK(KindOf([&] { ReadWav(dir.path() / "stereo.wav"); }) == ErrorKind::kUnsupportedFormat);
  std::ofstream(dir.path() / "junk.wav", std::ios::binary) << "not a wav file at all";
  CHECK(KindOf([&] { ReadWav(dir.path() / "junk.wav"); }) == ErrorKind::kCorruptData);
  CHECK(KindOf([&] { ReadWav(dir.path() / "none.wav"); }) == ErrorKind::kMissingInput);
  std::ofstream(dir.path() / "list.wav", std::ios::binary) << RawWav(1, 16, pcm, true);
  int rate = 0;
  CHECK(ReadWavPcm16(dir.path() / "list.wav", &rate) == pcm);
}

TEST_CASE("catalog round trip and speaker disjointness") {
  Fixture fx;
  const CorpusCatalog back = ReadCatalog(fx.dir.path() / "corpus" / kCatalogFileName);
  CHECK(back.corpus_id == fx.catalog.corpus_id);
  REQUIRE(back.entries.size() == fx.catalog.entries.size());
  CHECK(back.entries.size() == 60);
  CHECK_NOTHROW(back.Validate(true));
  std::set<std::string> test_speakers, other_speakers;
  for (const auto &e : back.entries)
    (e.split == "test" ? test_speakers : other_speakers).insert(e.speaker_id);
  CHECK(test_speakers.size() == 4);
  for (const auto &s : test_speakers) CHECK(other_speakers.count(s) == 0);
  CHECK(!back.InSplit("validation").empty());

  CorpusCatalog bad = back;
  bad.entries.back().speaker_id = bad.entries.front().speaker_id;
  bad.entries.back().split = "test";
  bad.entries.front().split = "train";
  CHECK(KindOf([&] { bad.Validate(false); }) == ErrorKind::kConflict);
}

TEST_CASE("noise records and partitions") {
  Fixture fx;
  const NoiseSource &n = fx.noises.at("ssn");
  CHECK(n.record.num_samples == 150 * 8000);
  CHECK(n.record.boundaries[0] == 120 * 8000);
  CHECK(n.record.boundaries[1] == 135 * 8000);
  CHECK(n.Slice("validation").size() == 15 * 8000);
  double peak = 0.0;
  for (double v : n.waveform.samples) peak = std::max(peak, std::abs(v));
  CHECK(std::abs(peak - kNoiseStoragePeak) < 1e-4);
  {
    std::fstream f(n.record_path.parent_path() / n.record.wav_path,
                   std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(100);
    f.put('\x55');
  }
  CHECK(KindOf([&] { LoadNoise(n.record_path); }) == ErrorKind::kCorruptData);
}

TEST_CASE("combined composition is half three-speaker") {
  Fixture fx;
  DatasetSpec s = SmallSpec(10, 2, 4);
  const DatasetManifest m = BuildManifest(fx.catalog, fx.noises, s);
  int silent = 0;
  for (const auto *r : m.InSplit("train")) {
    silent += r->silent_speaker_present;
    CHECK(r->num_outputs() == 3);
  }
  CHECK(silent == 5);
  CHECK(ManifestText(m, fx.dir.path()) ==
        ManifestText(BuildManifest(fx.catalog, fx.noises, s), fx.dir.path()));
  s.seed = 10;
  CHECK(ManifestText(m, fx.dir.path()) !=
        ManifestText(BuildManifest(fx.catalog, fx.noises, s), fx.dir.path()));
  for (const auto *r : m.InSplit("test")) {
    std::set<std::string> speakers;
    for (const auto &id : r->source_ids) speakers.insert(fx.catalog.Find(id)->speaker_id);
    CHECK(speakers.size() == r->source_ids.size());
    for (double o : r->level_offsets_db) CHECK((o >= 0.0 && o <= 5.0));
  }
}

TEST_CASE("training SNRs are uniform on [-5, 10] dB") {
  Fixture fx;
  std::map<std::string, NoiseSource> big;
  NoiseSource n;
  n.record.noise_id = "ssn";
  n.record.num_samples = int64_t{1} << 36;
  n.record.boundaries = PartitionBoundaries(n.record.num_samples, kNoiseSplitRatios);
  n.record_path = fx.dir.path() / "fake.json";
  big.emplace("ssn", n);
  const DatasetManifest m = BuildManifest(fx.catalog, big, SmallSpec(10000, 1, 8));
  double sum = 0.0;
  int count = 0;
  for (const auto *r : m.InSplit("train")) {
    REQUIRE(r->snr_db.has_value());
    CHECK((*r->snr_db >= -5.0 && *r->snr_db <= 10.0));
    sum += *r->snr_db;
    ++count;
  }
  CHECK(count == 10000);
  CHECK(std::abs(sum / count - 2.5) < 0.2);
  std::set<double> test_snrs;
  for (const auto *r : m.InSplit("test")) test_snrs.insert(*r->snr_db);
  CHECK(test_snrs == std::set<double>{-5.0, 0.0, 5.0, 20.0});
}

TEST_CASE("noise segments never overlap and shortage is reported") {
  Fixture fx;
  const DatasetManifest m = BuildManifest(fx.catalog, fx.noises, SmallSpec(30, 4, 4));
  CHECK_NOTHROW(ValidateManifest(m, fx.catalog, fx.noises));
  for (const char *split : {"train", "test"}) {
    std::vector<std::pair<int64_t, int64_t>> spans;
    for (const auto *r : m.InSplit(split)) {
      int64_t len = 0;
      for (const auto &id : r->source_ids) len = std::max(len, fx.catalog.Find(id)->num_samples);
      spans.emplace_back(r->noise_offset, r->noise_offset + len);
    }
    std::sort(spans.begin(), spans.end());
    for (std::size_t k = 1; k < spans.size(); ++k) CHECK(spans[k - 1].second <= spans[k].first);
  }
  DatasetManifest overlap = m;
  overlap.recipes[1].noise_offset = overlap.recipes[0].noise_offset;
  CHECK_THROWS_AS(ValidateManifest(overlap, fx.catalog, fx.noises), Error);
  CHECK(KindOf([&] { BuildManifest(fx.catalog, fx.noises, SmallSpec(2000, 4, 4)); }) ==
        ErrorKind::kInvalidArgument);
}

TEST_CASE("manifest round trip") {
  Fixture fx;
  DatasetManifest m = BuildManifest(fx.catalog, fx.noises, SmallSpec(6, 2, 2));
  m.catalog_path = fx.dir.path() / "corpus" / kCatalogFileName;
  m.config_echo = "seed=9\n";
  WriteManifest(m, fx.dir.path() / "m" / kManifestFileName);
  const DatasetManifest back = ReadManifest(fx.dir.path() / "m" / kManifestFileName);
  CHECK(ManifestText(back, fx.dir.path()) == ManifestText(m, fx.dir.path()));
  CHECK(back.config_echo == m.config_echo);
  CHECK(back.spec.stft == m.spec.stft);
  CHECK(back.spec.test_snrs_db == m.spec.test_snrs_db);
  const std::string text = Slurp(fx.dir.path() / "m" / kManifestFileName);
  CHECK(text.find("\"three_speaker_fraction\":0.5") != std::string::npos);
}

TEST_CASE("materialised files, checksums and additivity") {
  Fixture fx;
  DatasetSpec one = SmallSpec(1, 1, 1);
  const DatasetManifest m1 = BuildManifest(fx.catalog, fx.noises, one);
  const fs::path d1 = fx.dir.path() / "one";
  Materialize(m1, fx.catalog, fx.noises, d1);
  const MixtureRecipe &r = m1.recipes.front();
  int wavs = 0;
  for (const auto &e : fs::directory_iterator(d1 / r.split / r.id))
    wavs += e.path().extension() == ".wav";
  CHECK(wavs == 1 + r.num_outputs() + 1);

  const DatasetManifest m = BuildManifest(fx.catalog, fx.noises, SmallSpec(8, 2, 4));
  const fs::path d = fx.dir.path() / "data";
  MaterializeOptions opts;
  opts.workers = 2;
  const auto index = Materialize(m, fx.catalog, fx.noises, d, opts);
  CHECK(Slurp(d / kChecksumIndexFileName).rfind("# fnv1a-64", 0) == 0);
  CHECK(ReadChecksumIndex(d / kChecksumIndexFileName) == index);
  for (const auto &[rel, sum] : index) CHECK(ChecksumHex(FileChecksum(d / rel)) == sum);
  CHECK(Materialize(m, fx.catalog, fx.noises, d) == index);

  for (const MixtureRecipe &rec : m.recipes) {
    const fs::path base = d / rec.split / rec.id;
    int rate = 0;
    const auto mix = ReadWavPcm16(base / "mix.wav", &rate);
    std::vector<int32_t> sum(mix.size(), 0);
    for (int s = 0; s < rec.num_outputs(); ++s) {
      const auto part = ReadWavPcm16(base / ("s" + std::to_string(s + 1) + ".wav"), &rate);
      for (std::size_t n = 0; n < sum.size(); ++n) sum[n] += part[n];
    }
    const auto noise = ReadWavPcm16(base / "noise.wav", &rate);
    for (std::size_t n = 0; n < sum.size(); ++n) sum[n] += noise[n];
    bool exact = true;
    for (std::size_t n = 0; n < sum.size(); ++n) exact &= sum[n] == mix[n];
    CHECK(exact);
    const MixtureExample ex = LoadExample(d, rec);
    CHECK(ex.AdditivityError() <= 1e-12);
    double peak = 0.0;
    for (double v : ex.mixture.samples) peak = std::max(peak, std::abs(v));
    CHECK(peak <= 0.95 + 1e-9);
  }

  {
    std::string idx = Slurp(d / kChecksumIndexFileName);
    const std::size_t tab = idx.find('\t', idx.find(".wav"));
    idx[tab + 1] = idx[tab + 1] == '0' ? '1' : '0';
    std::ofstream(d / kChecksumIndexFileName, std::ios::binary) << idx;
  }
  CHECK(KindOf([&] { Materialize(m, fx.catalog, fx.noises, d); }) == ErrorKind::kConflict);

  const fs::path victim = d / m.recipes.front().split / m.recipes.front().id / "mix.wav";
  std::string bytes = Slurp(victim);
  bytes[60] ^= 0x7f;
  std::ofstream(victim, std::ios::binary) << bytes;
  CHECK(KindOf([&] { LoadExample(d, m.recipes.front()); }) == ErrorKind::kCorruptData);
}

TEST_CASE("training utterances carry one target per output") {
  Fixture fx;
  const DatasetManifest m = BuildManifest(fx.catalog, fx.noises, SmallSpec(4, 1, 1));
  const MixtureExample ex = SynthesizeExample(m.recipes.front(), fx.catalog, fx.noises);
  const TrainingUtterance u = MakeTrainingUtterance(ex, m.spec.stft);
  CHECK(u.targets.size() == 3);
  CHECK(u.mixture_magnitude.cols() == 129);
  for (const Grid &t : u.targets) CHECK(t.rows() == u.mixture_magnitude.rows());
}

TEST_CASE("dataset presets") {
  CHECK(DatasetPreset("desk").num_train == 200);
  CHECK(DatasetPreset("desk").num_validation == 40);
  CHECK(DatasetPreset("desk").num_test == 40);
  CHECK(DatasetPreset("wsj0-2mix-like").num_train == 20000);
  CHECK(DatasetPreset("wsj0-2mix-like").num_test == 5000);
  CHECK(DatasetPreset("wsj0-2+3mix-like").composition == Composition::kTwoPlusThree);
  CHECK(DatasetPreset("wsj0-3mix-like").composition == Composition::kThreeSpeaker);
  CHECK_THROWS_AS(DatasetPreset("nope"), Error);
}

}  // TEST_SUITE

}  // namespace
}  // namespace upit
