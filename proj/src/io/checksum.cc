// src/io/checksum.cc

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

#include "upit/io/checksum.h"

#include <cstdio>
#include <fstream>
#include <vector>

#include "upit/error.h"

namespace upit {

uint64_t Fnv1a64(std::span<const unsigned char> bytes, uint64_t state) {
  for (unsigned char b : bytes) {
    state ^= b;
    state *= 0x100000001b3ULL;
  }
  return state;
}

uint64_t FileChecksum(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kMissingInput, "cannot open " + path.string());
  std::vector<unsigned char> buf(1 << 16);
  uint64_t state = 0xcbf29ce484222325ULL;
  while (in) {
    in.read(reinterpret_cast<char *>(buf.data()), buf.size());
    state = Fnv1a64(std::span(buf.data(), static_cast<std::size_t>(in.gcount())),
                    state);
  }
  return state;
}

std::string ChecksumHex(uint64_t checksum) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(checksum));
  return buf;
}

}  // namespace upit
