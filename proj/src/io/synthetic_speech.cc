// src/io/synthetic_speech.cc

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

#include "upit/io/synthetic_speech.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "upit/error.h"
#include "upit/io/wav.h"
#include "upit/util/random.h"

namespace upit {

namespace {

struct Vowel {
  double f1, f2, f3;
};

constexpr std::array<Vowel, 8> kVowels = {{{730, 1090, 2440},
                                           {270, 2290, 3010},
                                           {300, 870, 2240},
                                           {530, 1840, 2480},
                                           {570, 840, 2410},
                                           {660, 1720, 2410},
                                           {490, 1350, 1690},
                                           {440, 1020, 2240}}};
constexpr std::array<double, 3> kBandwidths = {70.0, 100.0, 140.0};

// Two-pole resonator normalised to unit gain at DC.
class Resonator {
 public:
  void Set(double freq, double bandwidth, int rate) {
    const double r = std::exp(-std::numbers::pi * bandwidth / rate);
    const double c = 2.0 * r * std::cos(2.0 * std::numbers::pi * freq / rate);
    a1_ = c;
    a2_ = -r * r;
    g_ = 1.0 - c + r * r;
  }
  double Step(double x) {
    const double y = g_ * x + a1_ * y1_ + a2_ * y2_;
    y2_ = y1_;
    y1_ = y;
    return y;
  }

 private:
  double a1_ = 0.0, a2_ = 0.0, g_ = 1.0, y1_ = 0.0, y2_ = 0.0;
};

double RaisedCosineEnvelope(std::size_t i, std::size_t len, std::size_t ramp) {
  ramp = std::min(ramp, len / 2);
  if (ramp == 0) return 1.0;
  auto half = [&](std::size_t k) {
    return 0.5 - 0.5 * std::cos(std::numbers::pi * (k + 0.5) / ramp);
  };
  if (i < ramp) return half(i);
  if (i >= len - ramp) return half(len - 1 - i);
  return 1.0;
}

// Adds seg into out at offset with the given RMS.
void AddAtRms(const std::vector<double> &seg, double rms, std::vector<double> &out,
              std::size_t offset) {
  double e = 0.0;
  for (double v : seg) e += v * v;
  if (e <= 0.0) return;
  const double g = rms / std::sqrt(e / seg.size());
  for (std::size_t i = 0; i < seg.size(); ++i) out[offset + i] += g * seg[i];
}

}  // namespace

SpeakerProfile RandomSpeaker(const std::string &id, uint64_t seed) {
  std::mt19937_64 eng = MakeEngine(seed, {0x5be4});
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SpeakerProfile p;
  p.id = id;
  const bool low = u(eng) < 0.5;
  p.f0_hz = low ? 95.0 + 45.0 * u(eng) : 170.0 + 70.0 * u(eng);
  p.formant_scale = low ? 0.9 + 0.1 * u(eng) : 1.05 + 0.13 * u(eng);
  p.breathiness = 0.02 + 0.06 * u(eng);
  p.speaking_rate = 0.85 + 0.35 * u(eng);
  return p;
}

Waveform SynthesizeUtterance(const SpeakerProfile &speaker, double duration_s,
                             int sample_rate, uint64_t seed) {
  Require(duration_s > 0.2 && sample_rate >= 8000, ErrorKind::kInvalidArgument,
          "SynthesizeUtterance: need duration > 0.2 s and rate >= 8 kHz");
  std::mt19937_64 eng = MakeEngine(seed, {0x7e7});
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double fs = sample_rate;
  const std::size_t n = static_cast<std::size_t>(std::llround(duration_s * fs));
  std::vector<double> out(n, 0.0);
  auto samples = [&](double seconds) {
    return static_cast<std::size_t>(seconds * fs);
  };
  const std::size_t lead = samples(0.08 + 0.12 * u(eng));
  const std::size_t end = n - std::min(n / 4, samples(0.08 + 0.12 * u(eng)));
  const double nyquist_guard = 0.45 * fs;

  Vowel prev = kVowels[0];
  double glottal_phase = 0.0;
  std::size_t t = lead;
  while (t < end) {
    const double kind = u(eng);
    if (kind < 0.12) {
      t += samples((0.06 + 0.14 * u(eng)) / speaker.speaking_rate);
      continue;
    }
    if (kind < 0.30) {
      const std::size_t len =
          std::min(end - t, samples((0.05 + 0.07 * u(eng)) / speaker.speaking_rate));
      Resonator fric;
      fric.Set(std::min((2000.0 + 1500.0 * u(eng)) * speaker.formant_scale,
                        nyquist_guard),
               400.0, sample_rate);
      std::vector<double> seg(len);
      double prev_x = 0.0;
      for (std::size_t i = 0; i < len; ++i) {
        const double x = gauss(eng);
        // Differencing tilts the noise towards high frequencies.
        seg[i] = RaisedCosineEnvelope(i, len, samples(0.01)) * fric.Step(x - prev_x);
        prev_x = x;
      }
      AddAtRms(seg, 0.15 + 0.15 * u(eng), out, t);
      t += len;
      continue;
    }

    const std::size_t len =
        std::min(end - t, samples((0.10 + 0.18 * u(eng)) / speaker.speaking_rate));
    const Vowel v = kVowels[static_cast<std::size_t>(u(eng) * kVowels.size()) %
                            kVowels.size()];
    const double amp = 0.6 + 0.4 * u(eng);
    std::vector<double> seg(len);
    const double f0_shift = 1.0 + 0.08 * (2.0 * u(eng) - 1.0);
    std::array<Resonator, 3> formants;
    double lp1 = 0.0, lp2 = 0.0, prev_glottal = 0.0;
    const std::size_t transition = len * 3 / 10;
    for (std::size_t i = 0; i < len; ++i) {
      const double progress = static_cast<double>(t + i) / n;
      const double f0 = speaker.f0_hz * f0_shift * (1.1 - 0.2 * progress) *
                        (1.0 + 0.01 * gauss(eng));
      glottal_phase += f0 / fs;
      double pulse = 0.0;
      if (glottal_phase >= 1.0) {
        glottal_phase -= std::floor(glottal_phase);
        pulse = 1.0;
      }
      // Double pole near DC gives the glottal spectral tilt.
      const double g = pulse + 1.94 * lp1 - 0.9409 * lp2;
      lp2 = lp1;
      lp1 = g;
      double x = (g - prev_glottal) * 0.03 + speaker.breathiness * gauss(eng);
      prev_glottal = g;
      if (i % 16 == 0) {
        const double w = transition ? std::min(1.0, double(i) / transition) : 1.0;
        const std::array<double, 3> f = {prev.f1 + w * (v.f1 - prev.f1),
                                         prev.f2 + w * (v.f2 - prev.f2),
                                         prev.f3 + w * (v.f3 - prev.f3)};
        for (int k = 0; k < 3; ++k)
          formants[k].Set(std::min(f[k] * speaker.formant_scale, nyquist_guard),
                          kBandwidths[k], sample_rate);
      }
      for (Resonator &r : formants) x = r.Step(x);
      seg[i] = RaisedCosineEnvelope(i, len, samples(0.025)) * x;
    }
    AddAtRms(seg, amp, out, t);
    prev = v;
    t += len;
  }

  double energy = 0.0, peak = 0.0;
  for (double v : out) {
    energy += v * v;
    peak = std::max(peak, std::abs(v));
  }
  Require(energy > 0.0, ErrorKind::kNumeric, "SynthesizeUtterance: silent output");
  const double target_rms = std::pow(10.0, (-26.0 + 6.0 * (u(eng) - 0.5)) / 20.0);
  double gain = target_rms / std::sqrt(energy / n);
  gain = std::min(gain, 0.9 / peak);
  for (double &v : out) v *= gain;
  return Waveform(std::move(out), sample_rate);
}

CorpusCatalog GenerateSyntheticCorpus(const SyntheticCorpusSpec &spec,
                                      const std::filesystem::path &dir) {
  Require(spec.train_speakers >= 3 && spec.test_speakers >= 3 &&
              spec.utterances_per_speaker >= 2,
          ErrorKind::kInvalidArgument,
          "synthetic corpus: need >= 3 speakers per side and >= 2 utterances each");
  Require(spec.min_duration_s > 0.2 && spec.max_duration_s >= spec.min_duration_s,
          ErrorKind::kInvalidArgument, "synthetic corpus: bad duration range");
  CorpusCatalog catalog;
  catalog.corpus_id = spec.corpus_id;
  catalog.root = dir;
  const int total = spec.train_speakers + spec.test_speakers;
  const int num_validation = std::clamp(
      static_cast<int>(std::lround(spec.utterances_per_speaker * spec.validation_fraction)),
      1, spec.utterances_per_speaker - 1);
  for (int s = 0; s < total; ++s) {
    char spk[16];
    std::snprintf(spk, sizeof(spk), "spk%03d", s);
    const SpeakerProfile profile = RandomSpeaker(spk, DeriveSeed(spec.seed, {1, uint64_t(s)}));
    const bool test = s >= spec.train_speakers;
    std::filesystem::create_directories(dir / "wav" / spk);
    for (int k = 0; k < spec.utterances_per_speaker; ++k) {
      std::mt19937_64 eng = MakeEngine(spec.seed, {2, uint64_t(s), uint64_t(k)});
      const double dur = spec.min_duration_s + (spec.max_duration_s - spec.min_duration_s) *
                                                   std::uniform_real_distribution<double>()(eng);
      const Waveform w = SynthesizeUtterance(profile, dur, spec.sample_rate, eng());
      CatalogEntry e;
      char utt[32];
      std::snprintf(utt, sizeof(utt), "%s_%03d", spk, k);
      e.utterance_id = utt;
      e.speaker_id = spk;
      e.path = "wav/" + std::string(spk) + "/" + utt + ".wav";
      e.split = test ? "test"
                     : (k >= spec.utterances_per_speaker - num_validation ? "validation"
                                                                          : "train");
      e.num_samples = static_cast<int64_t>(w.size());
      e.sample_rate = w.sample_rate;
      WriteWav(w, dir / e.path);
      catalog.entries.push_back(std::move(e));
    }
  }
  WriteCatalog(catalog, dir / kCatalogFileName);
  return catalog;
}

}  // namespace upit
