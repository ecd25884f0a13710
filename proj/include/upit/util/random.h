// include/upit/util/random.h

// Copyright 2026  upitsep authors

// See ../../../COPYING for clarification regarding multiple authors
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

#ifndef UPIT_UTIL_RANDOM_H_
#define UPIT_UTIL_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace upit {

// Deterministic engine seeded from a root seed plus any number of stream
// tags, so independent consumers never share a random stream.
inline std::mt19937_64 MakeEngine(uint64_t seed,
                                  std::initializer_list<uint64_t> tags = {}) {
  std::vector<uint32_t> words;
  words.reserve(2 + 2 * tags.size());
  auto push = [&words](uint64_t v) {
    words.push_back(static_cast<uint32_t>(v));
    words.push_back(static_cast<uint32_t>(v >> 32));
  };
  push(seed);
  for (uint64_t t : tags) push(t);
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

// Derives a child seed; used where a seed has to be stored in a manifest.
inline uint64_t DeriveSeed(uint64_t seed, std::initializer_list<uint64_t> tags) {
  return MakeEngine(seed, tags)();
}

}  // namespace upit

#endif  // UPIT_UTIL_RANDOM_H_
