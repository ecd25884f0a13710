// src/model/checkpoint.cc

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

#include "upit/model/checkpoint.h"

#include <cstring>
#include <fstream>

#include "upit/error.h"

namespace upit {
namespace {

class Writer {
 public:
  explicit Writer(std::ofstream &os) : os_(os) {}
  template <typename T>
  void Put(T v) {
    os_.write(reinterpret_cast<const char *>(&v), sizeof(T));
  }
  void PutString(const std::string &s) {
    Put<uint32_t>(static_cast<uint32_t>(s.size()));
    os_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

 private:
  std::ofstream &os_;
};

class Reader {
 public:
  Reader(std::ifstream &is, std::string path) : is_(is), path_(std::move(path)) {}
  template <typename T>
  T Get() {
    T v{};
    is_.read(reinterpret_cast<char *>(&v), sizeof(T));
    if (!is_) Fail(ErrorKind::kCorruptData, "checkpoint truncated: " + path_);
    return v;
  }
  std::string GetString() {
    const auto n = Get<uint32_t>();
    if (n > (1u << 20)) Fail(ErrorKind::kCorruptData, "checkpoint string too long: " + path_);
    std::string s(n, '\0');
    is_.read(s.data(), n);
    if (!is_) Fail(ErrorKind::kCorruptData, "checkpoint truncated: " + path_);
    return s;
  }

 private:
  std::ifstream &is_;
  std::string path_;
};

}  // namespace

void SaveCheckpoint(const Checkpoint &ckpt, const std::filesystem::path &path) {
  std::ofstream os(path, std::ios::binary);
  Require(static_cast<bool>(os), ErrorKind::kMissingInput,
          "cannot open checkpoint for writing: " + path.string());
  Writer w(os);
  os.write(kCheckpointMagic, sizeof(kCheckpointMagic));
  w.Put<uint32_t>(kCheckpointVersion);
  w.PutString(ckpt.model_id);

  const BlstmConfig &c = ckpt.network.config();
  w.Put<int32_t>(c.num_layers);
  w.Put<int32_t>(c.cells_per_direction);
  w.Put<int32_t>(c.input_dim);
  w.Put<int32_t>(c.output_sources);
  w.Put<int32_t>(c.output_dim_per_source);
  w.Put<int32_t>(0);  // reserved
  w.Put<double>(c.dropout_rate);

  const TrainSchedule &s = ckpt.schedule;
  w.Put<double>(s.lr_initial);
  w.Put<double>(s.lr_decay);
  w.Put<double>(s.lr_floor);
  w.Put<double>(s.clip_norm);
  w.Put<double>(0.0);  // reserved
  w.Put<int32_t>(s.max_epochs);
  w.Put<int32_t>(s.minibatch_utterances);
  w.Put<uint64_t>(s.seed);

  w.Put<int32_t>(ckpt.state.epochs_completed);
  w.Put<double>(ckpt.state.learning_rate);
  w.Put<double>(ckpt.state.previous_train_loss);

  const auto &layout = ckpt.network.layout();
  w.Put<uint32_t>(static_cast<uint32_t>(layout.size()));
  for (const ParameterBlock &b : layout) {
    w.PutString(b.name);
    w.Put<uint64_t>(static_cast<uint64_t>(b.rows));
    w.Put<uint64_t>(static_cast<uint64_t>(b.cols));
    os.write(reinterpret_cast<const char *>(ckpt.network.parameters().data() + b.offset),
             static_cast<std::streamsize>(b.size() * sizeof(double)));
  }
  Require(static_cast<bool>(os), ErrorKind::kMissingInput,
          "failed writing checkpoint: " + path.string());
}

Checkpoint LoadCheckpoint(const std::filesystem::path &path) {
  Require(std::filesystem::exists(path), ErrorKind::kMissingInput,
          "checkpoint not found: " + path.string());
  std::ifstream is(path, std::ios::binary);
  Require(static_cast<bool>(is), ErrorKind::kMissingInput,
          "cannot open checkpoint: " + path.string());
  Reader r(is, path.string());
  char magic[sizeof(kCheckpointMagic)];
  is.read(magic, sizeof(magic));
  Require(is && std::memcmp(magic, kCheckpointMagic, sizeof(magic)) == 0,
          ErrorKind::kCorruptData, "not a checkpoint file: " + path.string());
  const auto version = r.Get<uint32_t>();
  Require(version == kCheckpointVersion, ErrorKind::kCorruptData,
          "unsupported checkpoint version " + std::to_string(version));
  const std::string model_id = r.GetString();

  BlstmConfig c;
  c.num_layers = r.Get<int32_t>();
  c.cells_per_direction = r.Get<int32_t>();
  c.input_dim = r.Get<int32_t>();
  c.output_sources = r.Get<int32_t>();
  c.output_dim_per_source = r.Get<int32_t>();
  r.Get<int32_t>();
  c.dropout_rate = r.Get<double>();

  TrainSchedule s;
  s.lr_initial = r.Get<double>();
  s.lr_decay = r.Get<double>();
  s.lr_floor = r.Get<double>();
  s.clip_norm = r.Get<double>();
  r.Get<double>();
  s.max_epochs = r.Get<int32_t>();
  s.minibatch_utterances = r.Get<int32_t>();
  s.seed = r.Get<uint64_t>();

  TrainState st;
  st.epochs_completed = r.Get<int32_t>();
  st.learning_rate = r.Get<double>();
  st.previous_train_loss = r.Get<double>();

  Checkpoint ckpt{model_id, BlstmNetwork(c), s, st};
  const auto &layout = ckpt.network.layout();
  const auto n_blocks = r.Get<uint32_t>();
  Require(n_blocks == layout.size(), ErrorKind::kCorruptData,
          "checkpoint block count does not match its config");
  Eigen::VectorXd params(ckpt.network.parameters().size());
  for (const ParameterBlock &b : layout) {
    const std::string name = r.GetString();
    const auto rows = r.Get<uint64_t>();
    const auto cols = r.Get<uint64_t>();
    Require(name == b.name && rows == static_cast<uint64_t>(b.rows) &&
                cols == static_cast<uint64_t>(b.cols),
            ErrorKind::kCorruptData, "checkpoint block mismatch at " + name);
    is.read(reinterpret_cast<char *>(params.data() + b.offset),
            static_cast<std::streamsize>(b.size() * sizeof(double)));
    Require(static_cast<bool>(is), ErrorKind::kCorruptData,
            "checkpoint truncated in block " + name);
  }
  ckpt.network.SetParameters(params);
  return ckpt;
}

}  // namespace upit
