// tests/test_dsp.cc

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
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "test_util.h"
#include "upit/dsp/fft.h"
#include "upit/dsp/resample.h"
#include "upit/dsp/stft.h"
#include "upit/error.h"

namespace upit {
namespace {

TEST_SUITE("dsp") {

TEST_CASE("impulse gives a flat first frame equal to the window value") {
  Waveform w(1000, 8000);
  w.samples[0] = 1.0;
  const ComplexSpectrogram spec = Stft(w);
  const auto window = MakeWindow(WindowType::kHanning, 256);
  REQUIRE(spec.num_bins() == 129);
  for (Eigen::Index b = 0; b < 129; ++b)
    CHECK(std::abs(spec.frames(0, b)) == doctest::Approx(window[0]).epsilon(1e-12));
}

TEST_CASE("silence gives an all-zero spectrogram covering every sample") {
  const Waveform w(8000, 8000);
  const ComplexSpectrogram spec = Stft(w);
  CHECK(spec.num_frames() == static_cast<Eigen::Index>(NumFrames(8000, {})));
  CHECK((spec.num_frames() - 1) * 128 + 256 >= 8000);
  CHECK((spec.num_frames() - 2) * 128 + 256 < 8000);
  CHECK(spec.frames.abs().maxCoeff() == 0.0);
}

TEST_CASE("bin-centre sinusoid concentrates in its main lobe") {
  const Waveform w = testing::Sine(8000, 1000.0);
  const Grid mag = Stft(w).Magnitude().frames;
  const double bin_hz = 8000.0 / 256;
  REQUIRE(std::lround(1000.0 / bin_hz) == 32);
  for (Eigen::Index i = 1; i + 1 < mag.rows(); ++i) {
    const double total = mag.row(i).square().sum();
    const double lobe = mag.row(i).segment(31, 3).square().sum();
    CHECK(lobe / total >= 0.99);
    Eigen::Index peak;
    mag.row(i).maxCoeff(&peak);
    CHECK(peak == 32);
  }
}

TEST_CASE("round trip is exact for random signals") {
  for (int n = 0; n < 20; ++n) {
    const Waveform w = testing::WhiteNoise(256 + 97 * n, 100 + n);
    const Waveform back = InverseStft(Stft(w));
    REQUIRE(back.size() == w.size());
    CHECK(testing::RelativeError(back.samples, w.samples) <= 1e-6);
  }
}

TEST_CASE("normaliser floor bounds edge gain of inconsistent frames") {
  const Waveform w = testing::WhiteNoise(2000, 5);
  const ComplexSpectrogram spec = Stft(w);
  ComplexSpectrogram flat = spec;
  flat.frames.setConstant(std::complex<double>(1.0, 0.0));
  const Waveform exact = InverseStft(flat);
  const Waveform floored = InverseStft(flat, 1e-3);
  // A flat spectrum is an impulse at n = 0 in every frame.
  CHECK(exact.samples[0] > 1000.0);
  CHECK(floored.samples[0] < 1.0);
  for (std::size_t n = 128; n + 256 < w.size(); ++n) {
    CHECK(floored.samples[n] == exact.samples[n]);
  }
  CHECK_THROWS_AS(InverseStft(spec, 2.0), Error);
}

TEST_CASE("zero magnitude with arbitrary phase inverts to silence") {
  const Waveform w = testing::WhiteNoise(2000, 3);
  const ComplexSpectrogram spec = Stft(w);
  MagnitudeSpectrogram mag = spec.Magnitude();
  mag.frames.setZero();
  const Waveform out = InverseStft(mag, spec.Phase());
  for (double v : out.samples) CHECK(v == 0.0);
}

TEST_CASE("identity mask with mixture phase reproduces the mixture") {
  const Waveform w = testing::SpeechLike(6000, 4);
  const ComplexSpectrogram spec = Stft(w);
  const MagnitudeSpectrogram mag = spec.Magnitude();
  const Grid ones = Grid::Ones(mag.frames.rows(), mag.frames.cols());
  const Waveform out = InverseStft(ApplyMask(ones, mag), spec.Phase());
  CHECK(testing::RelativeError(out.samples, w.samples) <= 1e-6);
}

TEST_CASE("apply mask is elementwise and clamps negatives") {
  MagnitudeSpectrogram r;
  r.frames.resize(1, 3);
  r.frames << 2, 4, 1;
  Grid m(1, 3);
  m << 0.5, 0.25, 2;
  const Grid out = ApplyMask(m, r).frames;
  CHECK(out(0, 0) == 1.0);
  CHECK(out(0, 1) == 1.0);
  CHECK(out(0, 2) == 2.0);
  CHECK(ApplyMask(Grid::Zero(1, 3), r).frames.maxCoeff() == 0.0);
  CHECK((ApplyMask(Grid::Ones(1, 3), r).frames == r.frames).all());
  CHECK(ApplyMask(Grid::Constant(1, 3, -1.0), r).frames.minCoeff() == 0.0);
  CHECK_THROWS_AS(ApplyMask(Grid::Ones(2, 3), r), Error);
}

TEST_CASE("windowed energy satisfies Parseval") {
  const Waveform w = testing::WhiteNoise(3000, 9);
  const StftConfig cfg;
  const ComplexSpectrogram spec = Stft(w, cfg);
  const auto window = MakeWindow(cfg.window, cfg.window_length);
  double spectral = 0.0;
  for (Eigen::Index i = 0; i < spec.num_frames(); ++i) {
    for (Eigen::Index b = 0; b < spec.num_bins(); ++b) {
      const double e = std::norm(spec.frames(i, b));
      spectral += (b == 0 || b == spec.num_bins() - 1) ? e : 2.0 * e;
    }
  }
  spectral /= cfg.fft_size;
  double weighted = 0.0;
  for (Eigen::Index i = 0; i < spec.num_frames(); ++i) {
    for (int n = 0; n < cfg.window_length; ++n) {
      const std::size_t t = i * cfg.hop + n;
      if (t < w.size()) weighted += std::pow(window[n] * w.samples[t], 2);
    }
  }
  CHECK(std::abs(spectral - weighted) / weighted <= 1e-6);
}

TEST_CASE("stft is linear") {
  const Waveform a = testing::WhiteNoise(1500, 1), b = testing::WhiteNoise(1500, 2);
  Waveform c(1500, 8000);
  for (std::size_t i = 0; i < c.size(); ++i)
    c.samples[i] = 0.3 * a.samples[i] - 1.7 * b.samples[i];
  const ComplexGrid lhs = Stft(c).frames;
  const ComplexGrid rhs = 0.3 * Stft(a).frames - 1.7 * Stft(b).frames;
  CHECK((lhs - rhs).abs().maxCoeff() <= 1e-10);
}

TEST_CASE("phase is wrapped and zero bins have phase zero") {
  const Waveform w = testing::WhiteNoise(1000, 5);
  const Grid phase = Stft(w).Phase().frames;
  CHECK(phase.maxCoeff() <= std::numbers::pi);
  CHECK(phase.minCoeff() > -std::numbers::pi);
  CHECK(Stft(Waveform(1000, 8000)).Phase().frames.abs().maxCoeff() == 0.0);
  CHECK(WrapPhase(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(WrapPhase(3 * std::numbers::pi) == doctest::Approx(std::numbers::pi));
}

TEST_CASE("invalid input is rejected") {
  CHECK_THROWS_AS(Stft(Waveform()), Error);
  StftConfig bad;
  bad.hop = 300;
  CHECK_THROWS_AS(bad.Validate(), Error);
  const Waveform w = testing::WhiteNoise(1000, 5);
  const ComplexSpectrogram spec = Stft(w);
  MagnitudeSpectrogram mag = spec.Magnitude();
  mag.frames.conservativeResize(mag.frames.rows() - 1, Eigen::NoChange);
  CHECK_THROWS_AS(InverseStft(mag, spec.Phase()), Error);
}

TEST_CASE("fft matches a direct DFT") {
  std::mt19937_64 eng(11);
  std::normal_distribution<double> g;
  std::vector<double> x(64);
  for (double &v : x) v = g(eng);
  RealFft fft(64);
  std::vector<std::complex<double>> spec(33);
  fft.Forward(x, spec);
  for (int k = 0; k < 33; ++k) {
    std::complex<double> acc = 0.0;
    for (int n = 0; n < 64; ++n)
      acc += x[n] * std::polar(1.0, -2.0 * std::numbers::pi * k * n / 64);
    CHECK(std::abs(acc - spec[k]) < 1e-10);
  }
  std::vector<double> back(64);
  fft.Inverse(spec, back);
  for (int n = 0; n < 64; ++n) CHECK(back[n] == doctest::Approx(x[n]).epsilon(1e-12));
}

TEST_CASE("resampling preserves an in-band tone") {
  const Waveform w = testing::Sine(16000, 500.0, 1.0, 8000);
  const Waveform up = Resample(w, 10000);
  CHECK(up.sample_rate == 10000);
  CHECK(up.size() == 20000);
  double err = 0.0;
  for (std::size_t n = 2000; n < 18000; ++n)
    err = std::max(err, std::abs(up.samples[n] -
                                 std::sin(2.0 * std::numbers::pi * 500.0 * n / 10000)));
  CHECK(err < 1e-3);
  const Waveform down = Resample(testing::Sine(16000, 3500.0, 1.0, 8000), 4000);
  CHECK(Rms(std::span(down.samples).subspan(500, down.size() - 1000)) < 1e-3);
}

}  // TEST_SUITE

}  // namespace
}  // namespace upit
