// include/upit/io/checksum.h

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

#ifndef UPIT_IO_CHECKSUM_H_
#define UPIT_IO_CHECKSUM_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

namespace upit {

inline constexpr const char *kChecksumAlgorithm = "fnv1a-64";

uint64_t Fnv1a64(std::span<const unsigned char> bytes,
                 uint64_t state = 0xcbf29ce484222325ULL);
uint64_t FileChecksum(const std::filesystem::path &path);
std::string ChecksumHex(uint64_t checksum);

}  // namespace upit

#endif  // UPIT_IO_CHECKSUM_H_
