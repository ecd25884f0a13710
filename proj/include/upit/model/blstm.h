// include/upit/model/blstm.h

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

#ifndef UPIT_MODEL_BLSTM_H_
#define UPIT_MODEL_BLSTM_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "upit/dsp/stft.h"

namespace upit {

struct BlstmConfig {
  int num_layers = 2;
  int cells_per_direction = 64;
  int input_dim = 129;
  int output_sources = 3;
  int output_dim_per_source = 129;
  double dropout_rate = 0.5;

  int output_dim() const { return output_sources * output_dim_per_source; }
  void Validate() const;
  // sum_l 2 * 4H (D_l + H + 1) + O (2H + 1), D_0 = input_dim, D_l = 2H.
  int64_t ParameterCount() const;

  bool operator==(const BlstmConfig &) const = default;
};

// A named slice of the flat parameter vector holding a rows x cols
// column-major matrix.
struct ParameterBlock {
  std::string name;
  Eigen::Index offset = 0;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  Eigen::Index size() const { return rows * cols; }
};

struct DirectionCache {
  Eigen::MatrixXd gates;   // 4H x K activations, row blocks i, f, g, o
  Eigen::MatrixXd cells;   // H x K
  Eigen::MatrixXd hidden;  // H x K
};

struct LayerCache {
  Eigen::MatrixXd input;    // D x K, after dropout
  Eigen::MatrixXd dropout;  // D x K inverted-dropout scale, empty if unused
  DirectionCache forward;
  DirectionCache backward;
};

struct ForwardCache {
  std::vector<LayerCache> layers;
  Eigen::MatrixXd top;         // 2H x K, [forward; backward] of the last layer
  Eigen::MatrixXd output_pre;  // O x K, before ReLU
  uint64_t parameter_version = 0;
  const void *owner = nullptr;
};

struct ForwardResult {
  std::vector<Grid> masks;  // output_sources grids of K x output_dim_per_source
  ForwardCache cache;
};

// Inverted dropout: keeps each entry with probability 1 - rate and scales the
// survivors by 1 / (1 - rate). Writes the per-entry scale into *scale.
Eigen::MatrixXd ApplyDropout(const Eigen::MatrixXd &x, double rate,
                             uint64_t seed, Eigen::MatrixXd *scale);

// Stacked bi-directional LSTM with a ReLU output layer producing one mask per
// output source. Cells have input, forget and output gates and a tanh
// candidate without peepholes. Forward and backward outputs of a layer are
// concatenated before feeding the next layer; dropout is applied to that
// concatenation (never to the network input or the output layer input).
class BlstmNetwork {
 public:
  explicit BlstmNetwork(const BlstmConfig &config);

  const BlstmConfig &config() const { return config_; }
  const std::vector<ParameterBlock> &layout() const { return layout_; }
  const ParameterBlock &block(std::string_view name) const;

  const Eigen::VectorXd &parameters() const { return params_; }
  void SetParameters(const Eigen::VectorXd &params);
  // Adds `delta` to the parameters.
  void Update(const Eigen::VectorXd &delta);
  uint64_t version() const { return version_; }

  Eigen::Map<const Eigen::MatrixXd> View(const ParameterBlock &b) const;
  Eigen::Map<Eigen::MatrixXd> MutableView(const ParameterBlock &b);

  // Weights uniform in (-scale, scale), biases zero except the forget gate
  // bias, which is 1.
  void Initialize(uint64_t seed, double scale = 0.05);

  // features: K x input_dim. Dropout only in train mode, seeded by `seed`.
  ForwardResult Forward(const Grid &features, bool train_mode,
                        uint64_t seed) const;
  std::vector<Grid> Infer(const Grid &features) const;

  // Gradient of a scalar loss with respect to every parameter, given the
  // loss gradient with respect to each output mask. Throws kInvalidArgument
  // when the cache was produced by another network or before a parameter
  // change.
  Eigen::VectorXd Backward(const ForwardCache &cache,
                           std::span<const Grid> mask_gradients) const;

 private:
  struct LayerParams;
  LayerParams Layer(int layer, int direction) const;

  BlstmConfig config_;
  std::vector<ParameterBlock> layout_;
  Eigen::VectorXd params_;
  uint64_t version_ = 0;
};

}  // namespace upit

#endif  // UPIT_MODEL_BLSTM_H_
