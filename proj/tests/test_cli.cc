// tests/test_cli.cc

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

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "test_util.h"

namespace upit {
namespace {

namespace fs = std::filesystem;

// Runs the CLI with stdout captured to a file; returns the exit code.
int Run(const std::string &args, const fs::path &stdout_path) {
  const std::string cmd = std::string(UPIT_CLI_PATH) + " " + args + " > " +
                          stdout_path.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const fs::path &p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

TEST_SUITE("cli") {

TEST_CASE("usage and missing-input exit codes") {
  testing::TempDir dir("cli_codes");
  const fs::path out = dir.path() / "stdout.txt";
  CHECK(Run("synth-noise --type pink --corpus x --out " + dir.path().string(), out) == 2);
  CHECK(Run("", out) == 2);
  CHECK(Run("train --data " + dir.path().string(), out) == 2);
  CHECK(Run("synth-noise --type ssn --corpus " + (dir.path() / "absent").string() +
                " --out " + (dir.path() / "n").string(),
            out) == 3);
  CHECK(Run("evaluate --data " + dir.path().string() + " --oracle", out) == 3);
  CHECK(Run("--help", out) == 0);
}

TEST_CASE("end-to-end pipeline is deterministic") {
  testing::TempDir dir("cli_e2e");
  const fs::path d = dir.path();
  const fs::path out = d / "stdout.txt";
  REQUIRE(Run("synth-corpus --out " + (d / "corpus").string() +
                  " --train-speakers 6 --test-speakers 3 --utterances 4 --seed 2",
              out) == 0);
  for (const char *run : {"a", "b"}) {
    const fs::path n = d / (std::string("noise_") + run);
    REQUIRE(Run("synth-noise --type ssn --corpus " + (d / "corpus").string() +
                    " --duration 150 --sentences 8 --seed 4 --out " + n.string(),
                out) == 0);
  }
  CHECK(Slurp(d / "noise_a" / "ssn.wav") == Slurp(d / "noise_b" / "ssn.wav"));
  CHECK(!Slurp(d / "noise_a" / "ssn.wav").empty());
  REQUIRE(Run("synth-noise --type bbl --groups 2 --corpus " + (d / "corpus").string() +
                  " --seed 4 --out " + (d / "noise_a").string(),
              out) == 0);

  REQUIRE(Run("make-mixtures --preset desk --train 6 --validation 2 --test 8 --corpus " +
                  (d / "corpus").string() + " --noise " +
                  (d / "noise_a" / "ssn.json").string() + " --out " + (d / "data").string(),
              out) == 0);
  REQUIRE(fs::exists(d / "data" / "manifest.jsonl"));

  std::string histories[2];
  for (int k = 0; k < 2; ++k) {
    const fs::path m = d / ("model" + std::to_string(k));
    REQUIRE(Run("train --preset desk --epochs 2 --seed 7 --data " + (d / "data").string() +
                    " --out " + m.string(),
                out) == 0);
    histories[k] = Slurp(m / "history.csv");
  }
  CHECK(histories[0] == histories[1]);
  CHECK(histories[0].rfind("epoch,learning_rate,train_loss,validation_loss\n", 0) == 0);
  CHECK(std::count(histories[0].begin(), histories[0].end(), '\n') == 3);

  REQUIRE(Run("evaluate --oracle --data " + (d / "data").string() + " --model " +
                  (d / "model0" / "model.ckpt").string() + " --out " + (d / "eval").string(),
              out) == 0);
  const std::string report = Slurp(out);
  CHECK(report == Slurp(d / "eval" / "report.txt"));
  CHECK(report.find("IPSF") != std::string::npos);
  CHECK(report.find("desk") != std::string::npos);
  const std::string csv = Slurp(d / "eval" / "report.csv");
  for (const char *snr : {",-5,", ",0,", ",5,", ",20,"}) CHECK(csv.find(snr) != std::string::npos);

  const fs::path mix = d / "data" / "test" / "tt00000" / "mix.wav";
  REQUIRE(fs::exists(mix));
  REQUIRE(Run("separate --model " + (d / "model0" / "model.ckpt").string() + " --input " +
                  mix.string() + " --out " + (d / "sep").string(),
              out) == 0);
  for (const char *s : {"s1.wav", "s2.wav", "s3.wav"})
    CHECK(fs::file_size(d / "sep" / s) == fs::file_size(mix));
}

}  // TEST_SUITE

}  // namespace
}  // namespace upit
