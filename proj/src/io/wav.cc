// src/io/wav.cc

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

#include "upit/io/wav.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "upit/error.h"

namespace upit {

namespace {

uint32_t ReadU32(const unsigned char *p) {
  return p[0] | (p[1] << 8) | (p[2] << 16) | (uint32_t(p[3]) << 24);
}
uint16_t ReadU16(const unsigned char *p) { return p[0] | (p[1] << 8); }

void PutU32(std::string &s, uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void PutU16(std::string &s, uint16_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>(v >> 8));
}

}  // namespace

std::vector<int16_t> QuantizePcm16(std::span<const double> samples) {
  std::vector<int16_t> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double v = std::nearbyint(samples[i] * 32768.0);
    out[i] = static_cast<int16_t>(std::clamp(v, -32768.0, 32767.0));
  }
  return out;
}

Waveform FromPcm16(std::span<const int16_t> pcm, int sample_rate) {
  Waveform w(pcm.size(), sample_rate);
  for (std::size_t i = 0; i < pcm.size(); ++i) w.samples[i] = pcm[i] / 32768.0;
  return w;
}

std::vector<int16_t> ReadWavPcm16(const std::filesystem::path &path,
                                  int *sample_rate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kMissingInput, "cannot open " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  const std::string where = " in " + path.string();
  Require(bytes.size() >= 12 && std::memcmp(bytes.data(), "RIFF", 4) == 0 &&
              std::memcmp(bytes.data() + 8, "WAVE", 4) == 0,
          ErrorKind::kCorruptData, "missing RIFF/WAVE header" + where);

  bool have_fmt = false;
  int rate = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const uint32_t size = ReadU32(&bytes[pos + 4]);
    const unsigned char *body = &bytes[pos + 8];
    const std::size_t available = bytes.size() - pos - 8;
    if (std::memcmp(&bytes[pos], "fmt ", 4) == 0) {
      Require(size >= 16 && available >= 16, ErrorKind::kCorruptData,
              "truncated fmt chunk" + where);
      const uint16_t format = ReadU16(body);
      const uint16_t channels = ReadU16(body + 2);
      const uint16_t bits = ReadU16(body + 14);
      Require(format == 1, ErrorKind::kUnsupportedFormat,
              "only PCM encoding is supported" + where);
      Require(channels == 1, ErrorKind::kUnsupportedFormat,
              "only mono is supported, got " + std::to_string(channels) +
                  " channels" + where);
      Require(bits == 16, ErrorKind::kUnsupportedFormat,
              "only 16-bit samples are supported" + where);
      rate = static_cast<int>(ReadU32(body + 4));
      Require(rate > 0, ErrorKind::kCorruptData, "zero sample rate" + where);
      have_fmt = true;
    } else if (std::memcmp(&bytes[pos], "data", 4) == 0) {
      Require(have_fmt, ErrorKind::kCorruptData, "data chunk before fmt" + where);
      Require(size <= available && size % 2 == 0, ErrorKind::kCorruptData,
              "truncated data chunk" + where);
      std::vector<int16_t> pcm(size / 2);
      for (std::size_t i = 0; i < pcm.size(); ++i)
        pcm[i] = static_cast<int16_t>(ReadU16(body + 2 * i));
      if (sample_rate) *sample_rate = rate;
      return pcm;
    }
    pos += 8 + size + (size & 1);
  }
  Fail(ErrorKind::kCorruptData, "no data chunk" + where);
}

Waveform ReadWav(const std::filesystem::path &path) {
  int rate = 0;
  const std::vector<int16_t> pcm = ReadWavPcm16(path, &rate);
  return FromPcm16(pcm, rate);
}

std::string EncodeWav(std::span<const int16_t> pcm, int sample_rate) {
  Require(sample_rate > 0, ErrorKind::kInvalidArgument, "WriteWav: bad sample rate");
  const uint32_t data_bytes = static_cast<uint32_t>(pcm.size() * 2);
  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  PutU32(out, 36 + data_bytes);
  out += "WAVEfmt ";
  PutU32(out, 16);
  PutU16(out, 1);
  PutU16(out, 1);
  PutU32(out, sample_rate);
  PutU32(out, sample_rate * 2);
  PutU16(out, 2);
  PutU16(out, 16);
  out += "data";
  PutU32(out, data_bytes);
  for (int16_t v : pcm) PutU16(out, static_cast<uint16_t>(v));
  return out;
}

void WriteWavPcm16(std::span<const int16_t> pcm, int sample_rate,
                   const std::filesystem::path &path) {
  const std::string out = EncodeWav(pcm, sample_rate);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  Require(static_cast<bool>(f), ErrorKind::kMissingInput,
          "cannot write " + path.string());
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  Require(static_cast<bool>(f), ErrorKind::kMissingInput,
          "write failed for " + path.string());
}

void WriteWav(const Waveform &w, const std::filesystem::path &path) {
  WriteWavPcm16(QuantizePcm16(w.samples), w.sample_rate, path);
}

}  // namespace upit
