// tests/test_mixing.cc

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
#include <numbers>

#include "doctest.h"
#include "test_util.h"
#include "upit/error.h"
#include "upit/mixing/active_level.h"
#include "upit/mixing/mixture.h"

namespace upit {
namespace {

double DirectRmsDb(std::span<const double> x) {
  return 10.0 * std::log10(MeanSquare(x));
}

Waveform Scaled(Waveform w, double g) {
  for (double &v : w.samples) v *= g;
  return w;
}

TEST_SUITE("mixing") {

TEST_CASE("always-active square wave measures at its RMS") {
  Waveform w(16000, 8000);
  for (std::size_t n = 0; n < w.size(); ++n) w.samples[n] = (n / 20) % 2 ? 1.0 : -1.0;
  const ActiveLevel level = MeasureActiveLevel(w);
  CHECK(std::abs(level.level_db - DirectRmsDb(w.samples)) < 0.1);
  CHECK(level.activity > 0.98);
}

TEST_CASE("half-duration burst measures at the burst RMS") {
  Waveform w(96000, 8000);
  for (std::size_t n = 0; n < 48000; ++n) {
    const double t = static_cast<double>(n) / 8000;
    double v = 0.0;
    for (int h = 1; h <= 10; ++h) v += std::sin(2.0 * std::numbers::pi * 140.0 * h * t) / h;
    w.samples[n] = 0.1 * (1.0 + 0.3 * std::sin(2.0 * std::numbers::pi * 4.0 * t)) * v;
  }
  const double oracle = DirectRmsDb(std::span(w.samples).first(48000));
  CHECK(std::abs(ActiveSpeechLevelDb(w) - oracle) < 0.5);
}

TEST_CASE("active level is scale equivariant") {
  const Waveform w = testing::SpeechLike(16000, 3);
  const double base = ActiveSpeechLevelDb(w);
  for (double g : {0.01, 0.3, 2.0, 17.0})
    CHECK(std::abs(ActiveSpeechLevelDb(Scaled(w, g)) - base - 20.0 * std::log10(g)) < 1e-6);
}

TEST_CASE("active level is nearly shift invariant") {
  Waveform w = testing::SpeechLike(16000, 8);
  w.samples.resize(24000, 0.0);
  const double base = ActiveSpeechLevelDb(w);
  std::rotate(w.samples.begin(), w.samples.begin() + 5000, w.samples.end());
  CHECK(std::abs(ActiveSpeechLevelDb(w) - base) < 0.1);
}

TEST_CASE("active level errors") {
  CHECK_THROWS_AS(MeasureActiveLevel(Waveform(100, 8000)), Error);
  try {
    MeasureActiveLevel(Waveform(8000, 8000));
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kNoActiveSpeech);
  }
}

TEST_CASE("identical utterances at 0 dB offset") {
  const Waveform u = testing::SpeechLike(12000, 1);
  const std::vector<Waveform> utts{u, u};
  const std::vector<double> offsets{0.0};
  const MixtureExample ex = MixSpeakers(utts, offsets);
  REQUIRE(ex.sources.size() == 2);
  for (std::size_t n = 0; n < u.size(); ++n) {
    CHECK(ex.sources[1].samples[n] == ex.sources[0].samples[n]);
    CHECK(ex.mixture.samples[n] == doctest::Approx(2.0 * ex.sources[0].samples[n]));
  }
}

TEST_CASE("level offsets are met on re-measurement") {
  const std::vector<Waveform> two{testing::SpeechLike(12000, 1, 120.0),
                                  testing::SpeechLike(9000, 2, 210.0)};
  const std::vector<double> five{5.0};
  const MixtureExample ex2 = MixSpeakers(two, five);
  CHECK(ex2.mixture.size() == 12000);
  CHECK(std::abs(ActiveSpeechLevelDb(ex2.sources[0]) -
                 ActiveSpeechLevelDb(ex2.sources[1]) - 5.0) < 0.01);
  CHECK(ex2.AdditivityError() <= 1e-12);

  const std::vector<Waveform> three{testing::SpeechLike(12000, 3, 110.0),
                                    testing::SpeechLike(14000, 4, 180.0),
                                    testing::SpeechLike(10000, 5, 240.0)};
  const std::vector<double> offsets{2.0, 4.0};
  const MixtureExample ex3 = MixSpeakers(three, offsets);
  const double l0 = ActiveSpeechLevelDb(ex3.sources[0]);
  CHECK(std::abs(l0 - ActiveSpeechLevelDb(ex3.sources[1]) - 2.0) < 0.01);
  CHECK(std::abs(l0 - ActiveSpeechLevelDb(ex3.sources[2]) - 4.0) < 0.01);
  for (const Waveform &s : ex3.sources) CHECK(s.size() == 14000);
  CHECK(ex3.AdditivityError() <= 1e-12);
}

TEST_CASE("mix speakers rejects bad input") {
  const std::vector<Waveform> one{testing::SpeechLike(8000, 1)};
  CHECK_THROWS_AS(MixSpeakers(one, std::vector<double>{}), Error);
  const std::vector<Waveform> silent{testing::SpeechLike(8000, 1), Waveform(8000, 8000)};
  CHECK_THROWS_AS(MixSpeakers(silent, std::vector<double>{1.0}), Error);
  const std::vector<Waveform> two{testing::SpeechLike(8000, 1), testing::SpeechLike(8000, 2)};
  CHECK_THROWS_AS(MixSpeakers(two, std::vector<double>{1.0, 2.0}), Error);
}

TEST_CASE("silent speaker sits 70 dB below the real sources") {
  const std::vector<Waveform> two{testing::SpeechLike(40000, 1, 120.0),
                                  testing::SpeechLike(40000, 2, 200.0)};
  const MixtureExample base = MixSpeakers(two, std::vector<double>{3.0});
  const MixtureExample a = AddSilentSpeaker(base, 77);
  const MixtureExample b = AddSilentSpeaker(base, 77);
  REQUIRE(a.sources.size() == 3);
  CHECK(a.recipe.silent_speaker_present);
  CHECK(a.sources[2].samples == b.sources[2].samples);
  const double e = 0.5 * (MeanSquare(a.sources[0].view()) + MeanSquare(a.sources[1].view()));
  const double gap = 10.0 * std::log10(e / MeanSquare(a.sources[2].view()));
  CHECK(std::abs(gap - kSilentSpeakerGapDb) < 0.05);
  CHECK(a.AdditivityError() <= 1e-12);
  CHECK_THROWS_AS(AddSilentSpeaker(a, 1), Error);
}

TEST_CASE("unit noise at 0 dB against a 0 dB mixture keeps unit gain") {
  MixtureExample ex;
  Waveform s(16000, 8000);
  for (std::size_t n = 0; n < s.size(); ++n) s.samples[n] = (n / 20) % 2 ? 1.0 : -1.0;
  ex.sources = {s, Waveform(16000, 8000)};
  ex.mixture = s;
  Waveform noise = testing::WhiteNoise(20000, 4);
  noise = Scaled(noise, 1.0 / Rms(noise.view()));
  const MixtureExample out = AddNoiseAtSnr(ex, noise, 1000, 0.0);
  const double speech_db = ActiveSpeechLevelDb(ex.mixture);
  REQUIRE(std::abs(speech_db) < 0.1);
  const double slice_rms = Rms(std::span(noise.samples).subspan(1000, 16000));
  const double gain = Rms(out.noise->view()) / slice_rms;
  CHECK(std::abs(gain - std::pow(10.0, speech_db / 20.0)) < 1e-3);
  CHECK(std::abs(gain - 1.0) < 0.012);
}

TEST_CASE("measured SNR matches the request") {
  const std::vector<Waveform> two{testing::SpeechLike(16000, 1, 120.0),
                                  testing::SpeechLike(16000, 2, 200.0)};
  const MixtureExample base = MixSpeakers(two, std::vector<double>{2.0});
  const Waveform noise = testing::WhiteNoise(30000, 5);
  for (double snr : {-5.0, 0.0, 5.0, 20.0}) {
    const MixtureExample ex = AddNoiseAtSnr(base, noise, 777, snr);
    std::vector<double> clean(ex.mixture.size());
    for (std::size_t n = 0; n < clean.size(); ++n)
      clean[n] = ex.sources[0].samples[n] + ex.sources[1].samples[n];
    const double measured = ActiveSpeechLevelDb(Waveform(clean, 8000)) -
                            DirectRmsDb(ex.noise->samples);
    CHECK(std::abs(measured - snr) < 0.05);
    CHECK(ex.recipe.snr_db == snr);
    CHECK(ex.AdditivityError() <= 1e-12);
  }
  CHECK_THROWS_AS(AddNoiseAtSnr(base, noise, 20000, 0.0), Error);
  CHECK_THROWS_AS(AddNoiseAtSnr(base, noise, 0, 61.0), Error);
  CHECK_THROWS_AS(AddNoiseAtSnr(base, noise, 0, -31.0), Error);
}

TEST_CASE("recipe invariants") {
  MixtureRecipe r;
  r.source_ids = {"a", "b"};
  r.level_offsets_db = {1.0};
  CHECK_NOTHROW(r.Validate());
  r.snr_db = 3.0;
  CHECK_THROWS_AS(r.Validate(), Error);
  r.noise_id = "ssn";
  CHECK_NOTHROW(r.Validate());
  r.source_ids = {"a"};
  CHECK_THROWS_AS(r.Validate(), Error);
  r.source_ids = {"a", "b", "c"};
  r.level_offsets_db = {1.0, 2.0};
  r.silent_speaker_present = true;
  CHECK_THROWS_AS(r.Validate(), Error);
  CHECK(ParseComposition(CompositionName(Composition::kTwoPlusThree)) ==
        Composition::kTwoPlusThree);
}

}  // TEST_SUITE

}  // namespace
}  // namespace upit
