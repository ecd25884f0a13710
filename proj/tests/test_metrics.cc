// tests/test_metrics.cc

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

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.h"
#include "test_util.h"
#include "upit/error.h"
#include "upit/metrics/estoi.h"
#include "upit/metrics/evaluation.h"
#include "upit/metrics/report.h"
#include "upit/metrics/sdr.h"

namespace upit {
namespace {

Waveform Scaled(Waveform w, double g) {
  for (double &v : w.samples) v *= g;
  return w;
}

Waveform Plus(Waveform a, const Waveform &b, double g = 1.0) {
  for (std::size_t n = 0; n < a.size(); ++n) a.samples[n] += g * b.samples[n];
  return a;
}

TEST_SUITE("metrics") {

TEST_CASE("SDR caps for exact and sign-flipped estimates") {
  const Waveform ref = testing::SpeechLike(8000, 1);
  CHECK(Sdr(ref, ref) == kSdrCapDb);
  CHECK(Sdr(ref, Scaled(ref, -1.0)) == kSdrCapDb);
  CHECK(Sdr(ref, Scaled(ref, 0.3)) == kSdrCapDb);
}

TEST_CASE("SDR of orthogonal noise at 10 dB") {
  for (uint64_t seed : {1, 2, 3}) {
    const Waveform ref = testing::SpeechLike(4000, seed);
    const Waveform noise = testing::OrthogonalNoise(ref, 10.0, seed + 10, kSdrFilterLength);
    CHECK(std::abs(Sdr(ref, Plus(ref, noise)) - 10.0) < 0.3);
  }
}

TEST_CASE("SDR is invariant to short reference-path filters") {
  // Trailing silence keeps the whole filtered reference inside the window.
  Waveform ref = testing::WhiteNoise(6000, 4);
  std::fill(ref.samples.end() - kSdrFilterLength, ref.samples.end(), 0.0);
  std::vector<double> h{0.0, 0.7, -0.2, 0.1};
  h.resize(kSdrFilterLength, 0.0);
  h[kSdrFilterLength - 1] = 0.05;
  Waveform est(ref.size(), 8000);
  for (std::size_t n = 0; n < ref.size(); ++n)
    for (std::size_t k = 0; k < h.size() && k <= n; ++k)
      est.samples[n] += h[k] * ref.samples[n - k];
  CHECK(Sdr(ref, est) >= kSdrCapDb - 0.1);
}

TEST_CASE("SDR errors") {
  const Waveform ref = testing::SpeechLike(4000, 1);
  CHECK_THROWS_AS(Sdr(ref, Waveform(3000, 8000)), Error);
  CHECK_THROWS_AS(Sdr(Waveform(4000, 8000), ref), Error);
}

TEST_CASE("ESTOI of identical and rescaled signals is one") {
  const Waveform clean = testing::SpeechLike(24000, 5);
  CHECK(std::abs(Estoi(clean, clean) - 1.0) < 1e-6);
  CHECK(std::abs(Estoi(clean, Scaled(clean, 0.5)) - 1.0) < 1e-6);
  const Waveform noisy = Plus(clean, testing::WhiteNoise(24000, 6, 0.05));
  const double base = Estoi(clean, noisy);
  CHECK(base < 1.0);
  CHECK(std::abs(Estoi(clean, Scaled(noisy, 3.7)) - base) < 1e-12);
}

TEST_CASE("ESTOI of independent noise is near zero") {
  const Waveform clean = testing::SpeechLike(32000, 7);
  for (uint64_t seed : {11, 12, 13}) {
    const Waveform noise = testing::WhiteNoise(32000, seed, 0.1);
    CHECK(std::abs(Estoi(clean, noise)) < 0.1);
  }
}

TEST_CASE("ESTOI falls with decreasing SNR") {
  const Waveform clean = testing::SpeechLike(24000, 8);
  const Waveform noise = testing::WhiteNoise(24000, 9);
  double prev = 1.0;
  for (double snr : {20.0, 5.0, -5.0}) {
    const double g = std::sqrt(MeanSquare(clean.samples) / std::pow(10.0, snr / 10.0));
    const double v = Estoi(clean, Plus(clean, noise, g));
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("ESTOI rejects too little speech") {
  CHECK_THROWS_AS(Estoi(testing::SpeechLike(1500, 1), testing::SpeechLike(1500, 1)), Error);
}

TEST_CASE("least-energy output is discarded for two references") {
  const Waveform a = testing::SpeechLike(8000, 1, 120.0), b = testing::SpeechLike(8000, 2, 220.0);
  const std::vector<Waveform> outputs{b, testing::WhiteNoise(8000, 3, 1e-5), a};
  const std::vector<Waveform> refs{a, b};
  const MetricOutcome o = EvaluateOutputs(outputs, refs, Metric::kSdr);
  CHECK(o.discarded_output == 1);
  CHECK(o.assignment == std::vector<int>{2, 0});
  CHECK(o.permutation.mapping == std::vector<int>{1, 0});
  CHECK(o.per_source[0] == kSdrCapDb);
  CHECK(o.per_source[1] == kSdrCapDb);
  CHECK(o.mean == kSdrCapDb);
}

TEST_CASE("known shuffle is recovered for three references") {
  const std::vector<Waveform> refs{testing::SpeechLike(24000, 1, 110.0),
                                   testing::SpeechLike(24000, 2, 170.0),
                                   testing::SpeechLike(24000, 3, 240.0)};
  const std::vector<Waveform> outputs{refs[1], refs[2], refs[0]};
  for (Metric m : {Metric::kSdr, Metric::kEstoi}) {
    const MetricOutcome o = EvaluateOutputs(outputs, refs, m);
    CHECK(o.assignment == std::vector<int>{2, 0, 1});
    CHECK(o.discarded_output == -1);
  }
  CHECK_THROWS_AS(EvaluateOutputs(outputs, std::vector<Waveform>{refs[0]}, Metric::kSdr), Error);
}

TEST_CASE("evaluation matches an exhaustive oracle on perturbed instances") {
  std::mt19937_64 eng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int nref = 2 + trial % 2;
    std::vector<Waveform> refs;
    for (int t = 0; t < nref; ++t) refs.push_back(testing::SpeechLike(16000, 100 * trial + t, 100.0 + 60 * t));
    std::vector<Waveform> outputs;
    for (int s = 0; s < 3; ++s) {
      Waveform o = testing::WhiteNoise(16000, 1000 * trial + s, 0.02);
      for (int t = 0; t < nref; ++t) o = Plus(o, refs[t], u(eng));
      outputs.push_back(o);
    }
    const Metric m = trial % 3 == 0 ? Metric::kEstoi : Metric::kSdr;
    const testing::BruteOutcome oracle = testing::BruteEvaluate(outputs, refs, m);
    const MetricOutcome got = EvaluateOutputs(outputs, refs, m);
    CHECK(got.assignment == oracle.assignment);
    CHECK(got.discarded_output == oracle.discarded);
    CHECK(got.mean == doctest::Approx(oracle.mean).epsilon(1e-12));
  }
}

TEST_CASE("improvements are differenced against the mixture") {
  const Waveform a = testing::SpeechLike(24000, 1, 120.0), b = testing::SpeechLike(24000, 2, 220.0);
  const Waveform mix = Plus(a, b);
  const std::vector<Waveform> refs{a, b};
  const std::vector<Waveform> outputs{a, b, Waveform(24000, 8000)};
  const EvalResult r = EvaluateSeparation(outputs, refs, mix);
  CHECK(r.num_speakers == 2);
  CHECK(r.sdr_unprocessed.size() == 2);
  CHECK(r.sdr_unprocessed[0] == doctest::Approx(Sdr(a, mix)));
  CHECK(r.sdr_improvement_db == doctest::Approx(r.sdr.mean - r.sdr_unprocessed_mean()));
  CHECK(r.estoi_improvement == doctest::Approx(r.estoi.mean - r.estoi_unprocessed_mean()));
  CHECK(r.estoi.mean == doctest::Approx(1.0).epsilon(1e-6));
}

EvalResult Result(const std::string &model, const std::string &noise, double snr, int speakers,
                  double sdr_imp, double estoi_imp, double sdr_un = -2.0) {
  EvalResult r;
  r.utterance_id = model + noise + std::to_string(snr) + std::to_string(sdr_imp);
  r.model_id = model;
  r.noise_id = noise;
  r.snr_db = snr;
  r.num_speakers = speakers;
  r.sdr_improvement_db = sdr_imp;
  r.estoi_improvement = estoi_imp;
  r.sdr_unprocessed = {sdr_un, sdr_un};
  r.estoi_unprocessed = {0.4, 0.4};
  return r;
}

TEST_CASE("aggregation") {
  const std::vector<EvalResult> one{Result("m", "ssn", 0.0, 2, 6.5, 0.11)};
  const auto cells = Aggregate(one);
  REQUIRE(cells.size() == 1);
  const CellStats &c = cells.begin()->second;
  CHECK(c.count == 1);
  CHECK(c.sdr_improvement_db == 6.5);
  CHECK(c.estoi_improvement == 0.11);

  const std::vector<EvalResult> two{Result("m", "ssn", 0.0, 2, 2.0, 0.1),
                                    Result("m", "ssn", 0.0, 2, 4.0, 0.3)};
  const CellStats &m = Aggregate(two).begin()->second;
  CHECK(m.sdr_improvement_db == 3.0);
  CHECK(m.estoi_improvement == doctest::Approx(0.2));
  CHECK_THROWS_AS(Aggregate(std::vector<EvalResult>{}), Error);
}

TEST_CASE("report layout") {
  Report rep;
  CHECK(rep.empty());
  CHECK_THROWS_AS(rep.RenderText(), Error);
  std::vector<EvalResult> rs;
  for (double snr : {-5.0, 0.0, 5.0, 20.0}) {
    rs.push_back(Result("desk", "ssn", snr, 2, 3.0, 0.05));
    rs.push_back(Result(kOracleModelId, "ssn", snr, 2, 12.0, 0.3));
    rs.push_back(Result("desk", "ssn", snr, 3, 2.0, 0.03));
  }
  rs.push_back(Result("desk", "bbl", 2.5, 2, 1.0, 0.01));
  rep.Add(rs);
  const std::string text = rep.RenderText();
  for (const char *row : {"-5", "0", "5", "20"}) CHECK(text.find(row) != std::string::npos);
  CHECK(text.find("No Proc.") != std::string::npos);
  CHECK(text.find("IPSF") != std::string::npos);
  CHECK(text.find("desk") != std::string::npos);
  CHECK(text.find(ReferenceFootnote()) != std::string::npos);
  const std::string foot = ReferenceFootnote();
  for (const char *v : {"+9.1 dB", "+0.18", "+7.2 dB", "+0.13"})
    CHECK(foot.find(v) != std::string::npos);
  CHECK(text.find("IPSF") < text.find("desk"));
  // The bbl table still lists the fixed SNR rows next to the measured one.
  const auto bbl = text.find("bbl");
  REQUIRE(bbl != std::string::npos);
  CHECK(text.find("2.5", bbl) != std::string::npos);

  const std::string csv = rep.RenderDelimited();
  CHECK(csv.rfind("metric,noise,speakers,snr_db,column,value,count", 0) == 0);
  const std::string sdr = MetricName(Metric::kSdr);
  CHECK(csv.find(sdr + ",ssn,2,-5,IPSF,12,1") != std::string::npos);
  CHECK(csv.find(sdr + ",ssn,3,20,desk,2,1") != std::string::npos);
  CHECK(csv.find(sdr + ",ssn,2,0,No Proc.,-2,2") != std::string::npos);
}

}  // TEST_SUITE

}  // namespace
}  // namespace upit
