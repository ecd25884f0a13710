// include/upit/error.h

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

#ifndef UPIT_ERROR_H_
#define UPIT_ERROR_H_

#include <stdexcept>
#include <string>

namespace upit {

// Coarse failure classes. The command-line tool maps these onto exit codes.
enum class ErrorKind {
  kInvalidArgument,
  kDimensionMismatch,
  kUnsupportedFormat,
  kCorruptData,
  kMissingInput,
  kNoActiveSpeech,
  kNumeric,
  kConflict,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string &what) {
  throw Error(kind, what);
}

inline void Require(bool condition, ErrorKind kind, const std::string &what) {
  if (!condition) throw Error(kind, what);
}

}  // namespace upit

#endif  // UPIT_ERROR_H_
